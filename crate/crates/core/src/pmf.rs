//! Probability family evaluation.
//!
//! A single weight is `binom(-n/c, k) * (-c x)^k * (1 + c x)^(-n/c - k)`
//! (Poisson weights `(n x)^k e^{-n x} / k!` in the `c -> 0` limit). Terms
//! are computed in log space and exponentiated, so binomial coefficients
//! never overflow. For `c < 0` the binomial coefficient is an exact
//! integer product.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::params::{EvalConfig, FamilyParams};
use crate::scalar::{ln_gamma, Real};

/// Natural log of an exact big integer.
///
/// Values that fit binary64 convert directly; larger ones split into a
/// 64-bit head and a power-of-two shift.
fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 960 {
        v.to_f64().expect("biguint fits f64").ln()
    } else {
        let shift = bits - 64;
        let head = (v >> shift).to_f64().expect("64-bit head");
        head.ln() + (shift as f64) * std::f64::consts::LN_2
    }
}

/// Exact binomial coefficient `C(l, k)` as a big integer.
pub(crate) fn binomial_exact(l: u32, k: u32) -> BigUint {
    if k > l {
        return BigUint::ZERO;
    }
    let k = k.min(l - k);
    let mut c = BigUint::one();
    // C(l-k+j, j) stays integral at every step
    for j in 1..=k {
        c = c * (l - k + j) / j;
    }
    c
}

/// `ln C(l, k)` for a whole row `k = 0..=l`, each entry from the exact
/// integer coefficient.
pub(crate) fn log_binomial_row<T: Real>(l: u32) -> Vec<T> {
    let mut row = Vec::with_capacity(l as usize + 1);
    let mut c = BigUint::one();
    row.push(T::zero());
    for k in 0..l {
        c = c * (l - k) / (k + 1);
        row.push(T::of(ln_biguint(&c)));
    }
    row
}

/// Single family weight `p_{n,k}(x)`.
///
/// Domain endpoints collapse to point masses and are returned exactly.
pub fn pmf_term<T: Real>(params: &FamilyParams<T>, k: u32, x: T) -> Result<T> {
    params.check_domain(x)?;
    let (c, n) = (params.c(), params.n());
    if x == T::zero() {
        return Ok(if k == 0 { T::one() } else { T::zero() });
    }
    if params.at_upper_endpoint(x) {
        return Ok(if Some(k) == params.l() {
            T::one()
        } else {
            T::zero()
        });
    }
    let kf = T::of_usize(k as usize);
    let log_p = if c < T::zero() {
        let l = params.l().expect("c < 0 has an order");
        if k > l {
            return Ok(T::zero());
        }
        let theta = -c * x;
        let log_c = T::of(ln_biguint(&binomial_exact(l, k)));
        log_c + kf * theta.ln() + T::of_usize((l - k) as usize) * (-theta).ln_1p()
    } else if c == T::zero() {
        kf * (n * x).ln() - ln_gamma(kf + T::one()) - n * x
    } else {
        let a = n / c;
        ln_gamma(a + kf) - ln_gamma(a) - ln_gamma(kf + T::one()) + kf * (c * x).ln()
            - (a + kf) * (c * x).ln_1p()
    };
    Ok(log_p.exp())
}

/// Ascending generator of the weights `p_0, p_1, ...` at a fixed point.
///
/// The `c < 0` support is finite (`k <= l`); the `c >= 0` sequences carry
/// an analytic term-ratio bound used for certified truncation. When the
/// leading weight underflows binary64, the recurrence runs in log space
/// until terms become representable again.
pub(crate) enum PmfSeq<T: Real> {
    Binomial {
        log_c: Vec<T>,
        ln_theta: T,
        ln_one_minus_theta: T,
        l: u32,
    },
    Poisson {
        nx: T,
        state: RecurState<T>,
    },
    NegBinomial {
        a: T,
        q: T,
        state: RecurState<T>,
    },
}

pub(crate) enum RecurState<T> {
    Linear(T),
    Log(T),
}

impl<T: Real> RecurState<T> {
    fn new(log_p0: T) -> Self {
        if log_p0 < T::of(-700.0) {
            RecurState::Log(log_p0)
        } else {
            RecurState::Linear(log_p0.exp())
        }
    }

    fn value(&self) -> T {
        match self {
            RecurState::Linear(p) => *p,
            RecurState::Log(lp) => {
                if *lp < T::of(-745.0) {
                    T::zero()
                } else {
                    lp.exp()
                }
            }
        }
    }

    fn advance(&mut self, ratio: T) {
        match self {
            RecurState::Linear(p) => *p = *p * ratio,
            RecurState::Log(lp) => {
                *lp = *lp + ratio.ln();
                if *lp > T::of(-690.0) {
                    *self = RecurState::Linear(lp.exp());
                }
            }
        }
    }
}

impl<T: Real> PmfSeq<T> {
    pub(crate) fn new(params: &FamilyParams<T>, x: T) -> Result<Self> {
        params.check_domain(x)?;
        if x == T::zero() || params.at_upper_endpoint(x) {
            return Err(Error::Singularity(
                "series path not used at domain endpoints; use the analytic limits",
            ));
        }
        let (c, n) = (params.c(), params.n());
        if c < T::zero() {
            let l = params.l().expect("c < 0 has an order");
            let theta = -c * x;
            Ok(PmfSeq::Binomial {
                log_c: log_binomial_row(l),
                ln_theta: theta.ln(),
                ln_one_minus_theta: (-theta).ln_1p(),
                l,
            })
        } else if c == T::zero() {
            Ok(PmfSeq::Poisson {
                nx: n * x,
                state: RecurState::new(-n * x),
            })
        } else {
            let a = n / c;
            Ok(PmfSeq::NegBinomial {
                a,
                q: c * x / (c * x + T::one()),
                state: RecurState::new(-a * (c * x).ln_1p()),
            })
        }
    }

    /// Index of the last nonzero weight, when the support is finite.
    pub(crate) fn finite_support(&self) -> Option<u32> {
        match self {
            PmfSeq::Binomial { l, .. } => Some(*l),
            _ => None,
        }
    }

    /// Weight at index `k`; for the recurrence-backed families `k` must
    /// advance one step at a time from zero.
    pub(crate) fn term(&mut self, k: usize) -> T {
        match self {
            PmfSeq::Binomial {
                log_c,
                ln_theta,
                ln_one_minus_theta,
                l,
            } => {
                if k > *l as usize {
                    return T::zero();
                }
                let kf = T::of_usize(k);
                let rest = T::of_usize(*l as usize - k);
                (log_c[k] + kf * *ln_theta + rest * *ln_one_minus_theta).exp()
            }
            PmfSeq::Poisson { nx, state } => {
                if k > 0 {
                    state.advance(*nx / T::of_usize(k));
                }
                state.value()
            }
            PmfSeq::NegBinomial { a, q, state } => {
                if k > 0 {
                    state.advance(*q * (*a + T::of_usize(k - 1)) / T::of_usize(k));
                }
                state.value()
            }
        }
    }

    /// Analytic bound on `p_{k+1} / p_k`.
    pub(crate) fn ratio_after(&self, k: usize) -> T {
        match self {
            PmfSeq::Binomial { .. } => unreachable!("finite support needs no ratio"),
            PmfSeq::Poisson { nx, .. } => *nx / T::of_usize(k + 1),
            PmfSeq::NegBinomial { a, q, .. } => *q * (*a + T::of_usize(k)) / T::of_usize(k + 1),
        }
    }
}

/// Truncation certificate: the term ratio must sit below
/// one and be non-increasing for three consecutive indices before the
/// geometric tail bound is trusted.
pub(crate) struct TailCertificate<T> {
    last_ratio: Option<T>,
    streak: u32,
}

impl<T: Real> TailCertificate<T> {
    pub(crate) fn new() -> Self {
        Self {
            last_ratio: None,
            streak: 0,
        }
    }

    /// Feeds the ratio `p_{k+1}/p_k`; returns `Some(r)` with a certified
    /// geometric ratio bound once the streak is long enough.
    pub(crate) fn observe(&mut self, ratio: T) -> Option<T> {
        let ok = ratio < T::one() && self.last_ratio.map(|prev| ratio <= prev).unwrap_or(true);
        self.streak = if ok { self.streak + 1 } else { 0 };
        self.last_ratio = Some(ratio);
        (self.streak >= 3).then_some(ratio)
    }
}

/// Geometric tail sums `sum_{j>=1} r^j`, `sum j r^j`, `sum j^2 r^j`.
pub(crate) fn geometric_tail_sums<T: Real>(r: T) -> (T, T, T) {
    let one_minus = T::one() - r;
    let s0 = r / one_minus;
    let s1 = r / (one_minus * one_minus);
    let s2 = r * (T::one() + r) / (one_minus * one_minus * one_minus);
    (s0, s1, s2)
}

/// Sum of all weights; the truncated value must sit within `10 * rel_tol`
/// of one.
pub fn pmf_normalization<T: Real>(
    params: &FamilyParams<T>,
    x: T,
    cfg: &EvalConfig<T>,
) -> Result<T> {
    params.check_domain(x)?;
    if x == T::zero() || params.at_upper_endpoint(x) {
        return Ok(T::one());
    }
    let mut seq = PmfSeq::new(params, x)?;
    if let Some(l) = seq.finite_support() {
        let mut sum = T::zero();
        for k in 0..=l as usize {
            sum += seq.term(k);
        }
        return Ok(sum);
    }
    let mut sum = T::zero();
    let mut cert = TailCertificate::new();
    for k in 0..cfg.max_terms {
        let p = seq.term(k);
        sum += p;
        if let Some(r) = cert.observe(seq.ratio_after(k)) {
            let tail = p * r / (T::one() - r);
            if tail <= cfg.rel_tol * sum {
                return Ok(sum);
            }
        }
    }
    Err(Error::Truncation {
        terms: cfg.max_terms,
    })
}
