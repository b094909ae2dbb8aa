//! Index of coincidence `S = sum p_k^2`, its first two derivatives, the
//! second-order ODE residual it satisfies, and the order-2 entropies.
//!
//! Derivatives are summed termwise using `p' = p (k - n x) / X` with
//! `X = x (1 + c x)`. The domain endpoints are returned from analytic
//! limits so the termwise ratio never sees `0/0`.

use crate::error::{Error, Result};
use crate::params::{EvalConfig, FamilyParams};
use crate::pmf::{geometric_tail_sums, PmfSeq, TailCertificate};
use crate::scalar::Real;

/// `S`, `S'`, `S''` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IocTriple<T> {
    pub s: T,
    pub s1: T,
    pub s2: T,
}

/// Order-2 Renyi and Tsallis entropies plus the Shannon entropy, all in
/// nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValues<T> {
    pub renyi2: T,
    pub tsallis2: T,
    pub shannon: T,
}

struct SeriesAccum<T> {
    s: T,
    s1: T,
    s2: T,
    shannon: T,
}

/// One ascending pass over the squared weights, accumulating `S` and the
/// termwise derivative series, with the Shannon sum carried alongside.
///
/// Truncation (infinite-support families only) follows the certified
/// geometric tail rule of [`TailCertificate`], applied to all requested
/// accumulators; the Shannon sum then runs to three times the stop index
/// (its tail decays almost as fast as the weights themselves, so the 2K
/// margin is a documented heuristic rather than a certified bound).
fn eval_series<T: Real>(
    params: &FamilyParams<T>,
    x: T,
    cfg: &EvalConfig<T>,
    want_derivs: bool,
    want_shannon: bool,
) -> Result<SeriesAccum<T>> {
    let (c, n) = (params.c(), params.n());
    let cap_x = x * (c * x + T::one());
    let slope = T::one() + T::two() * c * x;
    let nx = n * x;
    let mut seq = PmfSeq::new(params, x)?;

    let mut acc = SeriesAccum {
        s: T::zero(),
        s1: T::zero(),
        s2: T::zero(),
        shannon: T::zero(),
    };

    let shannon_term = |p: T| {
        if p > T::zero() {
            -p * p.ln()
        } else {
            T::zero()
        }
    };

    let tally = |acc: &mut SeriesAccum<T>, k: usize, p: T| -> (T, T) {
        let w = p * p;
        acc.s += w;
        let mut abs1 = T::zero();
        let mut abs2 = T::zero();
        if want_derivs {
            let g = (T::of_usize(k) - nx) / cap_x;
            let gp = (-(n * cap_x) - (T::of_usize(k) - nx) * slope) / (cap_x * cap_x);
            let t1 = T::two() * w * g;
            let t2 = T::two() * w * (T::two() * g * g + gp);
            acc.s1 += t1;
            acc.s2 += t2;
            abs1 = t1.abs();
            abs2 = t2.abs();
        }
        if want_shannon {
            acc.shannon += shannon_term(p);
        }
        (abs1, abs2)
    };

    if let Some(l) = seq.finite_support() {
        for k in 0..=l as usize {
            let p = seq.term(k);
            tally(&mut acc, k, p);
        }
        return Ok(acc);
    }

    let mut cert = TailCertificate::new();
    let mut abs_s1 = T::zero();
    let mut abs_s2 = T::zero();
    let mut stop = None;
    for k in 0..cfg.max_terms {
        let p = seq.term(k);
        let (a1, a2) = tally(&mut acc, k, p);
        abs_s1 += a1;
        abs_s2 += a2;
        let ratio_p = seq.ratio_after(k);
        if let Some(r_p) = cert.observe(ratio_p) {
            let r = r_p * r_p;
            let w = p * p;
            let (g0, g1, g2) = geometric_tail_sums(r);
            let tail_s = w * g0;
            if tail_s > cfg.rel_tol * acc.s {
                continue;
            }
            if want_derivs {
                // |g_{K+j}| <= (u + j) / X with u = |K - n x|
                let u = (T::of_usize(k) - nx).abs();
                let tail_1 = T::two() * w / cap_x * (u * g0 + g1);
                let quad = T::two() * (u * u * g0 + T::two() * u * g1 + g2);
                let lin = n * cap_x * g0 + slope.abs() * (u * g0 + g1);
                let tail_2 = T::two() * w / (cap_x * cap_x) * (quad + lin);
                if tail_1 > cfg.rel_tol * abs_s1 || tail_2 > cfg.rel_tol * abs_s2 {
                    continue;
                }
            }
            stop = Some(k);
            break;
        }
    }
    let stop = stop.ok_or(Error::Truncation {
        terms: cfg.max_terms,
    })?;

    if want_shannon {
        for k in stop + 1..=3 * stop {
            let p = seq.term(k);
            if p == T::zero() {
                break;
            }
            acc.shannon += shannon_term(p);
        }
    }
    Ok(acc)
}

/// Index of coincidence `S`, in `(0, 1]`, equal to one only at the domain
/// endpoints.
pub fn ioc<T: Real>(params: &FamilyParams<T>, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    params.check_domain(x)?;
    if x == T::zero() || params.at_upper_endpoint(x) {
        return Ok(T::one());
    }
    Ok(eval_series(params, x, cfg, false, false)?.s)
}

/// `S`, `S'`, `S''` together.
pub fn ioc_triple<T: Real>(
    params: &FamilyParams<T>,
    x: T,
    cfg: &EvalConfig<T>,
) -> Result<IocTriple<T>> {
    params.check_domain(x)?;
    let (c, n) = (params.c(), params.n());
    if x == T::zero() {
        // S(0) = 1; the ODE pins S'(0) = -2n and S''(0) = 2n(3n + c)
        return Ok(IocTriple {
            s: T::one(),
            s1: -T::two() * n,
            s2: T::two() * n * (T::of(3.0) * n + c),
        });
    }
    if params.at_upper_endpoint(x) {
        // mirror of the origin limits under t -> -1/c - t after reduction
        let l = T::of_usize(params.l().expect("c < 0") as usize);
        return Ok(IocTriple {
            s: T::one(),
            s1: T::two() * n,
            s2: T::two() * c * c * l * (T::of(3.0) * l - T::one()),
        });
    }
    let acc = eval_series(params, x, cfg, true, false)?;
    Ok(IocTriple {
        s: acc.s,
        s1: acc.s1,
        s2: acc.s2,
    })
}

/// Scaled residual of the second-order ODE satisfied by `S`:
/// `x(1+cx)(1+2cx) S'' + (4(n+c)x(1+cx)+1) S' + 2n(1+2cx) S`,
/// divided by the largest term magnitude (floored at one).
pub fn heun_residual<T: Real>(params: &FamilyParams<T>, x: T, cfg: &EvalConfig<T>) -> Result<T> {
    let IocTriple { s, s1, s2 } = ioc_triple(params, x, cfg)?;
    let (c, n) = (params.c(), params.n());
    let cap_x = x * (c * x + T::one());
    let slope = T::one() + T::two() * c * x;
    let t1 = cap_x * slope * s2;
    let t2 = (T::of(4.0) * (n + c) * cap_x + T::one()) * s1;
    let t3 = T::two() * n * slope * s;
    let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(T::one());
    Ok((t1 + t2 + t3) / scale)
}

/// Order-2 Renyi (`-log S`), order-2 Tsallis (`1 - S`) and Shannon
/// (`-sum p log p`) entropies.
pub fn entropies<T: Real>(
    params: &FamilyParams<T>,
    x: T,
    cfg: &EvalConfig<T>,
) -> Result<EntropyValues<T>> {
    params.check_domain(x)?;
    if x == T::zero() || params.at_upper_endpoint(x) {
        return Ok(EntropyValues {
            renyi2: T::zero(),
            tsallis2: T::zero(),
            shannon: T::zero(),
        });
    }
    let acc = eval_series(params, x, cfg, false, true)?;
    Ok(EntropyValues {
        renyi2: -acc.s.ln(),
        tsallis2: T::one() - acc.s,
        shannon: acc.shannon,
    })
}

/// Rewrites a `c < 0` family as the order-`l` binomial family evaluated at
/// `-c t`; the index of coincidence agrees on both sides.
pub fn reduce_negative_c<T: Real>(params: &FamilyParams<T>, t: T) -> Result<(FamilyParams<T>, T)> {
    if params.c() >= T::zero() {
        return Err(Error::InvalidParams(
            "reduction to the binomial family needs c < 0".into(),
        ));
    }
    params.check_domain(t)?;
    let l = params.l().expect("c < 0 has an order");
    Ok((FamilyParams::binomial(l)?, -params.c() * t))
}
