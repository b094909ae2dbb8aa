//! Closed-form bounds on the index of coincidence, the induced entropy
//! lower bounds, and the Legendre-polynomial bounds tied to the binomial
//! case.
//!
//! Bounds are evaluated in log space (log of each factor, then one
//! exponential) so exponents like `rho/c` stay stable for small `c`;
//! curvature values with `|c| < 1e-8` are routed to the Poisson formulas.

use crate::error::{Error, Result};
use crate::ioc::{ioc_triple, reduce_negative_c};
use crate::params::{EvalConfig, FamilyParams};
use crate::scalar::Real;
use crate::special::legendre_pair;

/// Curvatures closer to zero than this are treated as Poisson.
pub fn poisson_threshold<T: Real>() -> T {
    T::of(1e-8)
}

/// Shared quantities entering the log-convexity bound at a point `t`:
/// `X = t(1+ct)`, `X' = 1+2ct`, `T = X`, `rho = sqrt(n^2+c^2)` and
/// `R = sqrt(16 rho^2 T^2 + 8cT + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs<T> {
    pub x_cap: T,
    pub x_slope: T,
    pub t_cap: T,
    pub rho: T,
    pub r: T,
}

impl<T: Real> BoundInputs<T> {
    pub fn new(params: &FamilyParams<T>, t: T) -> Result<Self> {
        params.check_domain(t)?;
        let (c, n) = (params.c(), params.n());
        let x_cap = t * (c * t + T::one());
        let t_cap = x_cap;
        let rho = n.hypot(c);
        let radicand = T::of(16.0) * rho * rho * t_cap * t_cap + T::of(8.0) * c * t_cap + T::one();
        Ok(Self {
            x_cap,
            x_slope: T::one() + T::two() * c * t,
            t_cap,
            rho,
            r: radicand.sqrt(),
        })
    }
}

/// Identifier of a closed-form bound on `S`, with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    /// Convexity-only upper bound, valid for every `c`.
    Basic,
    /// Log-convexity upper bound, tight tier (`c != 0`).
    LogConvexTight,
    /// Log-convexity upper bound, loose tier (`c > 0` only).
    LogConvexLoose,
    /// Poisson-specialized upper bound (`c = 0`).
    PoissonSharp,
    /// Binomial ratio-integrated lower bound (`c = -1`).
    BinomRatioLower,
    /// Binomial ratio-integrated upper bound (`c = -1`).
    BinomRatioUpper,
    /// Binomial integral-representation lower bound (`c = -1`).
    BinomIntegralLower,
}

impl BoundId {
    /// True when the bound sits above `S`.
    pub fn is_upper(self) -> bool {
        !matches!(self, BoundId::BinomRatioLower | BoundId::BinomIntegralLower)
    }

    /// Wire name used in reports and CSV columns.
    pub fn wire_name(self) -> &'static str {
        match self {
            BoundId::Basic => "bound_basic",
            BoundId::LogConvexTight => "bound_tight",
            BoundId::LogConvexLoose => "bound_loose",
            BoundId::PoissonSharp => "bound_poisson",
            BoundId::BinomRatioLower => "lower_44",
            BoundId::BinomRatioUpper => "upper_44",
            BoundId::BinomIntegralLower => "lower_int",
        }
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.wire_name())
    }
}

/// Upper bound from convexity alone:
/// `(4(n+c)t(1+ct) + 1)^(-n / (2(n+c)))`, degenerating to `e^{-2nT}` when
/// `n + c = 0` (the order-one binomial).
pub fn bound_basic<T: Real>(params: &FamilyParams<T>, t: T) -> Result<T> {
    params.check_domain(t)?;
    let (c, n) = (params.c(), params.n());
    let t_cap = t * (c * t + T::one());
    if n + c == T::zero() {
        return Ok((-T::two() * n * t_cap).exp());
    }
    let exponent = -n / (T::two() * (n + c));
    Ok((exponent * (T::of(4.0) * (n + c) * t_cap).ln_1p()).exp())
}

/// Pointwise upper bound on `S'/S` from log-convexity:
/// `(sqrt(1 + 8cX + 16(n^2+c^2)X^2) - 1 - 4(n+c)X) / (2XX')`.
///
/// Computed with the rationalized, cancellation-free equivalent
/// `-4nX' / (1 + 4(n+c)X + sqrt(...))`, which also recovers the `-2n`
/// limit as `X -> 0`. Valid for `c >= 0`; for `c < 0` the derivation needs
/// `X' > 0`, i.e. points left of `-1/(2c)`.
pub fn ratio_bound<T: Real>(params: &FamilyParams<T>, x: T) -> Result<T> {
    params.check_domain(x)?;
    let (c, n) = (params.c(), params.n());
    let cap_x = x * (c * x + T::one());
    let slope = T::one() + T::two() * c * x;
    if cap_x == T::zero() {
        return Err(Error::Singularity("ratio bound undefined at X = 0"));
    }
    if slope == T::zero() {
        return Err(Error::Singularity("ratio bound undefined at X' = 0"));
    }
    let rho2 = n * n + c * c;
    let disc = T::one() + T::of(8.0) * c * cap_x + T::of(16.0) * rho2 * cap_x * cap_x;
    Ok(-T::of(4.0) * n * slope / (T::one() + T::of(4.0) * (n + c) * cap_x + disc.sqrt()))
}

/// Log-convexity upper bound on `S`, tight tier always, loose tier only
/// for `c > 0`. Near-zero curvature routes to [`bound_poisson`].
pub fn bound_logconvex<T: Real>(params: &FamilyParams<T>, t: T) -> Result<(T, Option<T>)> {
    params.check_domain(t)?;
    let (c, n) = (params.c(), params.n());
    if c.abs() < poisson_threshold() {
        return Ok((bound_poisson(n, t)?, None));
    }
    let b = BoundInputs::new(params, t)?;
    let (t_cap, rho, r) = (b.t_cap, b.rho, b.r);
    let log_sq = T::two().ln()
        - (T::one() + T::of(4.0) * c * t_cap + r).ln()
        - n / c * (r + T::of(4.0) * n * t_cap).ln()
        + rho / c * ((rho * r + T::of(4.0) * rho * rho * t_cap + c).ln() - (rho + c).ln());
    let tight = (T::half() * log_sq).exp();
    let loose = (c > T::zero()).then(|| {
        let log_sq = -(T::of(4.0) * c * t_cap).ln_1p()
            - n / c * (T::of(4.0) * (n + c) * t_cap).ln_1p()
            + rho / c * (T::of(8.0) * rho * t_cap).ln_1p();
        (T::half() * log_sq).exp()
    });
    Ok((tight, loose))
}

/// Decay exponent of the tight bound as `t -> infinity` (`c > 0`), paired
/// with the slower exponent implied by the convexity-only bound.
///
/// `gamma = (sqrt(n^2+c^2) - n - c)/c` evaluated as `-2n/(rho + n + c)`
/// to avoid cancellation; `baseline = -n/(n+c)`; `gamma < baseline`
/// strictly.
pub fn asymptotic_exponent<T: Real>(params: &FamilyParams<T>) -> Result<(T, T)> {
    let (c, n) = (params.c(), params.n());
    if c <= T::zero() {
        return Err(Error::InvalidParams(
            "asymptotic exponent needs c > 0".into(),
        ));
    }
    let rho = n.hypot(c);
    let gamma = -T::two() * n / (rho + n + c);
    let baseline = -n / (n + c);
    Ok((gamma, baseline))
}

/// Poisson upper bound on `S_{n,0}`:
/// `sqrt(2 exp(sqrt(1+16n^2t^2) - 1 - 4nt) / (1 + sqrt(1+16n^2t^2)))`.
///
/// The exponent is computed as `1/(s + 4nt) - 1` (with `s` the square
/// root), which is exact where the naive difference cancels.
pub fn bound_poisson<T: Real>(n: T, t: T) -> Result<T> {
    if !(t >= T::zero()) || !(n > T::zero()) {
        return Err(Error::InvalidParams(format!(
            "bound_poisson needs n > 0 and t >= 0, got n = {n}, t = {t}"
        )));
    }
    let four_nt = T::of(4.0) * n * t;
    let s = T::one().hypot(four_nt);
    let exponent = (s + four_nt).recip() - T::one();
    Ok((T::half() * (T::two().ln() + exponent - (T::one() + s).ln())).exp())
}

/// Upper bound on the modified Bessel function:
/// `I0(t) <= sqrt(2 exp(sqrt(1+4t^2) - 1) / (sqrt(1+4t^2) + 1))`.
pub fn bound_bessel<T: Real>(t: T) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(Error::InvalidParams(format!(
            "bound_bessel needs t >= 0, got {t}"
        )));
    }
    let s = T::one().hypot(T::two() * t);
    Ok((T::half() * (T::two().ln() + s - T::one() - (s + T::one()).ln())).exp())
}

/// Two-sided bracket for `S'/S` of the order-`n` binomial on `[0, 1/2]`:
/// `-2nX'/(1+(n-3)X) <= S'/S <= -2n(n+1)X'/(n+1+(4n^2-2n-4)X)` with
/// `X = x(1-x)`.
pub fn binom_ratio_bounds<T: Real>(n: u32, x: T) -> Result<(T, T)> {
    check_binom_half(n, x)?;
    let nf = T::of_usize(n as usize);
    let cap_x = x * (T::one() - x);
    let slope = T::one() - T::two() * x;
    let lower = -T::two() * nf * slope / (T::one() + (nf - T::of(3.0)) * cap_x);
    let upper = -T::two() * nf * (nf + T::one()) * slope
        / (nf + T::one() + (T::of(4.0) * nf * nf - T::two() * nf - T::of(4.0)) * cap_x);
    Ok((lower, upper))
}

/// Two-sided bracket for `S_{n,-1}(t)` on `[0, 1]` obtained by integrating
/// [`binom_ratio_bounds`]; the lower branch degenerates to `e^{-6T}` at
/// `n = 3`.
pub fn binom_ioc_bounds<T: Real>(n: u32, t: T) -> Result<(T, T)> {
    if n < 1 {
        return Err(Error::InvalidParams("binomial order must be >= 1".into()));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let nf = T::of_usize(n as usize);
    let t_cap = t * (T::one() - t);
    let lower = if n == 3 {
        (-T::of(6.0) * t_cap).exp()
    } else {
        let e = -T::two() * nf / (nf - T::of(3.0));
        (e * ((nf - T::of(3.0)) * t_cap).ln_1p()).exp()
    };
    let denom = T::two() * nf * nf - nf - T::two();
    let e = -nf * (nf + T::one()) / denom;
    let arg = (T::of(4.0) * nf * nf - T::two() * nf - T::of(4.0)) * t_cap / (nf + T::one());
    let upper = (e * arg.ln_1p()).exp();
    Ok((lower, upper))
}

/// Lower bound for `S_{n,-1}(t)` from its integral representation:
/// `(1 - (1-4T)^{n+1}) / (2 pi (n+1) T)`, with the `T -> 0` limit `2/pi`.
pub fn binom_ioc_integral_lower<T: Real>(n: u32, t: T) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidParams("binomial order must be >= 1".into()));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let t_cap = t * (T::one() - t);
    if t_cap == T::zero() {
        return Ok(T::two() / T::PI());
    }
    let np1 = T::of_usize(n as usize + 1);
    let numer = -(np1 * (-T::of(4.0) * t_cap).ln_1p()).exp_m1();
    Ok(numer / (T::two() * T::PI() * np1 * t_cap))
}

/// Bracket for `P'_n/P_n` on `t >= 1`: the sharp lower/upper pair plus the
/// weaker upper bound it dominates.
pub fn legendre_ratio_bounds<T: Real>(n: u32, t: T) -> Result<(T, T, T)> {
    if n < 1 {
        return Err(Error::InvalidParams("degree must be >= 1".into()));
    }
    if !(t >= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let nf = T::of_usize(n as usize);
    let s = ((t - T::one()) * (t + T::one())).sqrt();
    let lower = nf * (nf + T::one()) / (T::two() * t + (nf - T::one()) * s);
    let upper_sharp = nf * nf * (T::two() * nf + T::one())
        / ((nf + T::one()) * t + (T::two() * nf * nf - T::one()) * s);
    let upper_weak = T::two() * nf * nf / (t + (T::two() * nf - T::one()) * s);
    Ok((lower, upper_sharp, upper_weak))
}

/// Upper bounds on `P_n(t)` from integrating the two ratio bounds; the
/// first dominates the second. Needs `n >= 2`.
pub fn legendre_value_bounds<T: Real>(n: u32, t: T) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::InvalidParams("value bounds need degree >= 2".into()));
    }
    if !(t >= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let nf = T::of_usize(n as usize);
    let s = ((t - T::one()) * (t + T::one())).sqrt();
    let ln_base = (t + s).ln();

    let denom = T::two() * nf * nf - nf - T::two();
    let strong = (nf * (T::two() * nf * nf - T::one()) / denom * ln_base
        - nf * (nf + T::one()) / denom
            * (t + (T::two() * nf * nf - T::one()) * s / (nf + T::one())).ln())
    .exp();

    let weak = (nf * (T::two() * nf - T::one()) / (T::two() * (nf - T::one())) * ln_base
        - nf / (T::two() * (nf - T::one())) * (t + (T::two() * nf - T::one()) * s).ln())
    .exp();
    Ok((strong, weak))
}

/// Residual of the identity linking the Legendre ratio to the binomial
/// index of coincidence at `t = (1 - 2X)/X'`:
/// `P'_n/P_n = nX'/(2X) + ((1-4X)/(4X)) S'_{n,-1}/S_{n,-1}`,
/// reported relative to `|P'_n/P_n|`.
pub fn legendre_ioc_link<T: Real>(n: u32, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Singularity("link undefined at x = 0"));
    }
    if !(x < T::half()) {
        return Err(Error::Singularity("link undefined at x = 1/2"));
    }
    let cap_x = x * (T::one() - x);
    let slope = T::one() - T::two() * x;
    let t = (T::one() - T::two() * cap_x) / slope;
    let pair = legendre_pair(n, t)?;
    if !pair.p.is_finite() || !pair.dp.is_finite() {
        return Err(Error::Overflow("Legendre value out of binary64 range"));
    }
    let lhs = pair.dp / pair.p;
    let params = FamilyParams::binomial(n)?;
    let triple = ioc_triple(&params, x, cfg)?;
    let nf = T::of_usize(n as usize);
    let rhs = nf * slope / (T::two() * cap_x)
        + (T::one() - T::of(4.0) * cap_x) / (T::of(4.0) * cap_x) * triple.s1 / triple.s;
    Ok((lhs - rhs) / lhs.abs())
}

/// Upper bound on `S'/S` of the binomial that integrates back to the
/// convexity-only bound: `-2nX'/(1 + 4(n-1)X)` on `[0, 1/2]`.
pub fn ratio_bound_basic_binom<T: Real>(n: u32, x: T) -> Result<T> {
    check_binom_half(n, x)?;
    let nf = T::of_usize(n as usize);
    let cap_x = x * (T::one() - x);
    let slope = T::one() - T::two() * x;
    Ok(-T::two() * nf * slope / (T::one() + T::of(4.0) * (nf - T::one()) * cap_x))
}

fn check_binom_half<T: Real>(n: u32, x: T) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParams("binomial order must be >= 1".into()));
    }
    if !(x >= T::zero() && x <= T::half()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&x).unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 0.5,
        });
    }
    Ok(())
}

/// Converts an upper bound on `S` into lower bounds on the order-2 Renyi
/// and Tsallis entropies: `(-log bound, 1 - bound)`.
pub fn entropy_lower_bounds<T: Real>(
    params: &FamilyParams<T>,
    t: T,
    id: BoundId,
) -> Result<(T, T)> {
    if !id.is_upper() {
        return Err(Error::InvalidParams(format!(
            "{id} is a lower bound on S; entropy conversion needs an upper bound"
        )));
    }
    let bound = eval_bound(params, t, id)?;
    Ok((-bound.ln(), T::one() - bound))
}

/// Evaluates one identified bound at a point, reducing `c < 0` families to
/// the binomial case where the binomial-only bounds require it.
pub fn eval_bound<T: Real>(params: &FamilyParams<T>, t: T, id: BoundId) -> Result<T> {
    let binom_view = |params: &FamilyParams<T>, t: T| -> Result<(u32, T)> {
        if params.c() >= T::zero() {
            return Err(Error::InvalidParams(format!(
                "{} requires c < 0",
                BoundId::BinomRatioLower
            )));
        }
        let (b, x) = reduce_negative_c(params, t)?;
        Ok((b.l().expect("binomial order"), x))
    };
    match id {
        BoundId::Basic => bound_basic(params, t),
        BoundId::LogConvexTight => Ok(bound_logconvex(params, t)?.0),
        BoundId::LogConvexLoose => bound_logconvex(params, t)?.1.ok_or_else(|| {
            Error::InvalidParams("loose log-convexity tier exists only for c > 0".into())
        }),
        BoundId::PoissonSharp => {
            if params.c().abs() >= poisson_threshold() {
                return Err(Error::InvalidParams(
                    "Poisson bound applies only to c = 0".into(),
                ));
            }
            bound_poisson(params.n(), t)
        }
        BoundId::BinomRatioLower => {
            let (l, x) = binom_view(params, t)?;
            Ok(binom_ioc_bounds(l, x)?.0)
        }
        BoundId::BinomRatioUpper => {
            let (l, x) = binom_view(params, t)?;
            Ok(binom_ioc_bounds(l, x)?.1)
        }
        BoundId::BinomIntegralLower => {
            let (l, x) = binom_view(params, t)?;
            binom_ioc_integral_lower(l, x)
        }
    }
}

/// Per-point record: the value of `S`, every applicable bound, and the
/// signed margin in the favorable direction.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub x: T,
    pub value: T,
    pub bounds: Vec<(BoundId, T, T)>,
    pub pass: bool,
}

/// Bounds applicable to a family, in report order.
pub fn applicable_bounds<T: Real>(params: &FamilyParams<T>) -> Vec<BoundId> {
    let c = params.c();
    let mut ids = vec![BoundId::Basic];
    if c.abs() < poisson_threshold() {
        ids.push(BoundId::PoissonSharp);
    } else {
        ids.push(BoundId::LogConvexTight);
        if c > T::zero() {
            ids.push(BoundId::LogConvexLoose);
        }
    }
    if c == -T::one() {
        ids.push(BoundId::BinomRatioLower);
        ids.push(BoundId::BinomRatioUpper);
        ids.push(BoundId::BinomIntegralLower);
    }
    ids
}

/// Evaluates `S` and every applicable bound at one point. A report passes
/// when every margin clears `-1e-10 * max(1, bound)`.
pub fn bound_report<T: Real>(
    params: &FamilyParams<T>,
    x: T,
    cfg: &EvalConfig<T>,
) -> Result<BoundReport<T>> {
    let value = crate::ioc::ioc(params, x, cfg)?;
    let mut bounds = Vec::new();
    let mut pass = true;
    for id in applicable_bounds(params) {
        let b = eval_bound(params, x, id)?;
        let margin = if id.is_upper() { b - value } else { value - b };
        pass &= margin >= -T::of(1e-10) * b.abs().max(T::one());
        bounds.push((id, b, margin));
    }
    Ok(BoundReport {
        x,
        value,
        bounds,
        pass,
    })
}
