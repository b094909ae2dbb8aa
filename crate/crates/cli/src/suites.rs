//! The verification suites driven by `verify`.
//!
//! Every check produces a [`CheckRecord`] whose `margin` is the signed
//! slack of the comparison; `pass` applies the check's default tolerance
//! unless the configuration overrides it. Grid points are evaluated in
//! parallel and gathered into a fixed order, so reports are byte-identical
//! for any worker count.

use rayon::prelude::*;

use icx_core::bounds::{
    applicable_bounds, asymptotic_exponent, binom_ioc_bounds, binom_ratio_bounds, bound_basic,
    bound_bessel, bound_logconvex, bound_poisson, bound_report, eval_bound, legendre_ioc_link,
    legendre_ratio_bounds, legendre_value_bounds, ratio_bound, ratio_bound_basic_binom,
};
use icx_core::fd::{central_diff, second_diff};
use icx_core::identities::{identity_one, identity_two};
use icx_core::ioc::{entropies, heun_residual, ioc, ioc_triple, reduce_negative_c};
use icx_core::special::{bessel_i0, ioc_binomial_quadrature, legendre_pair};
use icx_core::{Error, FamilyParams64};

use crate::grid::{Suite, SweepConfig};
use crate::report::{CheckRecord, SuiteReport};

// Default margin tolerances, one per check family.
const TOL_PMF_SUM: f64 = 1e-12;
const TOL_SYMMETRY: f64 = 4e-13;
const TOL_REDUCTION: f64 = 2e-13;
const TOL_CONVEXITY: f64 = 1e-10;
const TOL_MONOTONE: f64 = 1e-10;
const TOL_FD: f64 = 1e-6;
const TOL_CM_SIGN: f64 = 1e-6;
const TOL_LOGCONVEX: f64 = 1e-10;
const TOL_ODE: f64 = 1e-8;
const TOL_BOUND: f64 = 1e-10;
const TOL_ORDERING: f64 = 1e-10;
const TOL_LINK: f64 = 1e-8;
const TOL_QUADRATURE: f64 = 1e-11;
const TOL_BESSEL_ID: f64 = 1e-10;
const TOL_ENTROPY_LB: f64 = 1e-9;
const TOL_ENTROPY_DD: f64 = 1e-8;
const TOL_ENTROPY_D1: f64 = 1e-10;
/// The exponent gap must be strictly positive by at least this much.
const GAP_EXPONENT: f64 = 1e-12;

struct Ctx<'a> {
    cfg: &'a SweepConfig,
}

impl Ctx<'_> {
    fn tol(&self, default: f64) -> f64 {
        self.cfg.margin_tol.unwrap_or(default)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        suite: Suite,
        check: impl Into<String>,
        c: Option<f64>,
        n: Option<f64>,
        x: Option<f64>,
        observed: f64,
        target: Option<f64>,
        margin: f64,
        default_tol: f64,
    ) -> CheckRecord {
        CheckRecord {
            suite: suite.name(),
            check: check.into(),
            c,
            n,
            x,
            observed,
            target,
            margin,
            pass: margin >= -self.tol(default_tol),
        }
    }

    fn family_rec(
        &self,
        suite: Suite,
        check: impl Into<String>,
        p: &FamilyParams64,
        x: f64,
        observed: f64,
        target: Option<f64>,
        margin: f64,
        default_tol: f64,
    ) -> CheckRecord {
        self.rec(
            suite,
            check,
            Some(p.c()),
            Some(p.n()),
            Some(x),
            observed,
            target,
            margin,
            default_tol,
        )
    }

    fn error_rec(
        &self,
        suite: Suite,
        check: &str,
        p: &FamilyParams64,
        x: f64,
        err: &Error,
    ) -> CheckRecord {
        CheckRecord {
            suite: suite.name(),
            check: format!("{check}_error: {err}"),
            c: Some(p.c()),
            n: Some(p.n()),
            x: Some(x),
            observed: 0.0,
            target: None,
            margin: -1.0,
            pass: false,
        }
    }
}

/// Uniform grid of `count` points on `[lo, hi]`, both ends included.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count as f64 - 1.0);
    (0..count).map(|i| lo + step * i as f64).collect()
}

fn point_checks(ctx: &Ctx, p: &FamilyParams64, x: f64) -> Vec<CheckRecord> {
    let cfg = ctx.cfg;
    let mut out = Vec::new();
    let c = p.c();
    let hi = if c < 0.0 { p.domain_hi() } else { cfg.x_max };
    let interior = x > 0.0 && (c >= 0.0 || x < p.domain_hi());

    if cfg.has_suite(Suite::Normalization) {
        match icx_core::pmf::pmf_normalization(p, x, &cfg.eval) {
            Ok(sum) => out.push(ctx.family_rec(
                Suite::Normalization,
                "pmf_sum",
                p,
                x,
                sum,
                Some(1.0),
                -(sum - 1.0).abs(),
                TOL_PMF_SUM,
            )),
            Err(e) => out.push(ctx.error_rec(Suite::Normalization, "pmf_sum", p, x, &e)),
        }
        if c == -1.0 && interior && x < 0.5 {
            let pair = (ioc(p, x, &cfg.eval), ioc(p, 1.0 - x, &cfg.eval));
            match pair {
                (Ok(a), Ok(b)) => out.push(ctx.family_rec(
                    Suite::Normalization,
                    "symmetry",
                    p,
                    x,
                    a,
                    Some(b),
                    -(a - b).abs(),
                    TOL_SYMMETRY,
                )),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(ctx.error_rec(Suite::Normalization, "symmetry", p, x, &e))
                }
            }
        }
        if c < 0.0 && c != -1.0 && interior {
            let direct = ioc(p, x, &cfg.eval);
            let reduced = reduce_negative_c(p, x).and_then(|(b, xb)| ioc(&b, xb, &cfg.eval));
            match (direct, reduced) {
                (Ok(a), Ok(b)) => out.push(ctx.family_rec(
                    Suite::Normalization,
                    "reduction",
                    p,
                    x,
                    a,
                    Some(b),
                    -((a - b).abs() / b),
                    TOL_REDUCTION,
                )),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(ctx.error_rec(Suite::Normalization, "reduction", p, x, &e))
                }
            }
        }
    }

    let need_triple = cfg.has_suite(Suite::Convexity)
        || cfg.has_suite(Suite::LogConvexity)
        || cfg.has_suite(Suite::Bounds);
    let triple = if need_triple {
        match ioc_triple(p, x, &cfg.eval) {
            Ok(t) => Some(t),
            Err(e) => {
                out.push(ctx.error_rec(Suite::Convexity, "ioc_triple", p, x, &e));
                None
            }
        }
    } else {
        None
    };

    if let (true, Some(t)) = (cfg.has_suite(Suite::Convexity), triple.as_ref()) {
        out.push(ctx.family_rec(
            Suite::Convexity,
            "s2_nonneg",
            p,
            x,
            t.s2,
            Some(0.0),
            t.s2,
            TOL_CONVEXITY,
        ));
        if c >= 0.0 {
            out.push(ctx.family_rec(
                Suite::Convexity,
                "s1_nonpos",
                p,
                x,
                t.s1,
                Some(0.0),
                -t.s1,
                TOL_MONOTONE,
            ));
        }
        let h = cfg.eval.deriv_step;
        if interior && x >= 10.0 * h && (c >= 0.0 || x <= hi - 10.0 * h) {
            let s_at = |y: f64| ioc(p, y, &cfg.eval);
            match central_diff(s_at, x, h) {
                Ok(fd1) => {
                    let m = -((t.s1 - fd1).abs() / t.s1.abs().max(1.0));
                    out.push(ctx.family_rec(
                        Suite::Convexity,
                        "fd_s1",
                        p,
                        x,
                        t.s1,
                        Some(fd1),
                        m,
                        TOL_FD,
                    ));
                }
                Err(e) => out.push(ctx.error_rec(Suite::Convexity, "fd_s1", p, x, &e)),
            }
            let s1_at = |y: f64| ioc_triple(p, y, &cfg.eval).map(|t| t.s1);
            match central_diff(s1_at, x, h) {
                Ok(fd2) => {
                    let m = -((t.s2 - fd2).abs() / t.s2.abs().max(1.0));
                    out.push(ctx.family_rec(
                        Suite::Convexity,
                        "fd_s2",
                        p,
                        x,
                        t.s2,
                        Some(fd2),
                        m,
                        TOL_FD,
                    ));
                }
                Err(e) => out.push(ctx.error_rec(Suite::Convexity, "fd_s2", p, x, &e)),
            }
        }
        // complete-monotonicity spot checks: signs of the third and fourth
        // derivatives via differences of S''
        if c >= 0.0 && (0.1..=5.0).contains(&x) {
            let h_cm = 1e-3 * x.max(1.0);
            let s2_at = |y: f64| ioc_triple(p, y, &cfg.eval).map(|t| t.s2);
            let noise = 1e-11 * t.s2.abs();
            if let Ok(d3) = central_diff(s2_at, x, h_cm) {
                let floor = (noise / (2.0 * h_cm)).max(1e-300);
                if d3.abs() > 10.0 * floor {
                    out.push(ctx.family_rec(
                        Suite::Convexity,
                        "cm_j3",
                        p,
                        x,
                        d3,
                        Some(0.0),
                        -d3 / d3.abs(),
                        TOL_CM_SIGN,
                    ));
                }
            }
            if let Ok(d4) = second_diff(s2_at, x, h_cm) {
                let floor = (4.0 * noise / (h_cm * h_cm)).max(1e-300);
                if d4.abs() > 10.0 * floor {
                    out.push(ctx.family_rec(
                        Suite::Convexity,
                        "cm_j4",
                        p,
                        x,
                        d4,
                        Some(0.0),
                        d4 / d4.abs(),
                        TOL_CM_SIGN,
                    ));
                }
            }
        }
    }

    if let (true, Some(t)) = (cfg.has_suite(Suite::LogConvexity), triple.as_ref()) {
        let m = (t.s * t.s2 - t.s1 * t.s1) / (t.s1 * t.s1).max(1.0);
        out.push(ctx.family_rec(
            Suite::LogConvexity,
            "log_convexity",
            p,
            x,
            t.s * t.s2 - t.s1 * t.s1,
            Some(0.0),
            m,
            TOL_LOGCONVEX,
        ));
    }

    if cfg.has_suite(Suite::Ode) {
        match heun_residual(p, x, &cfg.eval) {
            Ok(r) => out.push(ctx.family_rec(
                Suite::Ode,
                "heun_residual",
                p,
                x,
                r,
                Some(0.0),
                -r.abs(),
                TOL_ODE,
            )),
            Err(e) => out.push(ctx.error_rec(Suite::Ode, "heun_residual", p, x, &e)),
        }
    }

    if cfg.has_suite(Suite::Bounds) {
        match bound_report(p, x, &cfg.eval) {
            Ok(rep) => {
                for (id, bound, margin) in &rep.bounds {
                    out.push(ctx.family_rec(
                        Suite::Bounds,
                        id.wire_name(),
                        p,
                        x,
                        rep.value,
                        Some(*bound),
                        margin / bound.abs().max(1.0),
                        TOL_BOUND,
                    ));
                }
            }
            Err(e) => out.push(ctx.error_rec(Suite::Bounds, "bound_report", p, x, &e)),
        }
        out.extend(ratio_and_ordering_checks(
            ctx,
            p,
            x,
            triple.as_ref(),
            interior,
        ));
    }

    if cfg.has_suite(Suite::Entropy) {
        match entropies(p, x, &cfg.eval) {
            Ok(e) => {
                for id in applicable_bounds(p) {
                    if !id.is_upper() {
                        continue;
                    }
                    match eval_bound(p, x, id) {
                        Ok(b) => {
                            out.push(ctx.family_rec(
                                Suite::Entropy,
                                format!("renyi_lb_{}", id.wire_name()),
                                p,
                                x,
                                e.renyi2,
                                Some(-b.ln()),
                                e.renyi2 - (-b.ln()),
                                TOL_ENTROPY_LB,
                            ));
                            out.push(ctx.family_rec(
                                Suite::Entropy,
                                format!("tsallis_lb_{}", id.wire_name()),
                                p,
                                x,
                                e.tsallis2,
                                Some(1.0 - b),
                                e.tsallis2 - (1.0 - b),
                                TOL_ENTROPY_LB,
                            ));
                        }
                        Err(err) => {
                            out.push(ctx.error_rec(Suite::Entropy, id.wire_name(), p, x, &err))
                        }
                    }
                }
            }
            Err(e) => out.push(ctx.error_rec(Suite::Entropy, "entropies", p, x, &e)),
        }
    }

    out
}

fn ratio_and_ordering_checks(
    ctx: &Ctx,
    p: &FamilyParams64,
    x: f64,
    triple: Option<&icx_core::IocTriple64>,
    interior: bool,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let (c, n) = (p.c(), p.n());
    let Some(t) = triple else {
        return out;
    };
    let q = t.s1 / t.s;

    // the pointwise log-derivative bound holds for c >= 0 everywhere and,
    // for c < 0, left of the midpoint where X' > 0
    let slope = 1.0 + 2.0 * c * x;
    let left_half = c >= 0.0 || x < -1.0 / (2.0 * c);
    if interior && left_half && slope.abs() >= 1e-9 {
        match ratio_bound(p, x) {
            Ok(b) => out.push(ctx.family_rec(
                Suite::Bounds,
                "ratio_logconvex",
                p,
                x,
                q,
                Some(b),
                (b - q) / b.abs().max(1.0),
                TOL_BOUND,
            )),
            Err(e) => out.push(ctx.error_rec(Suite::Bounds, "ratio_logconvex", p, x, &e)),
        }
    }

    if c == -1.0 && x <= 0.5 {
        let l = p.l().expect("c = -1 has an order");
        if let (Ok((lo, hi)), Ok(v45)) = (binom_ratio_bounds(l, x), ratio_bound_basic_binom(l, x)) {
            if interior {
                out.push(ctx.family_rec(
                    Suite::Bounds,
                    "binom_ratio_lower",
                    p,
                    x,
                    q,
                    Some(lo),
                    (q - lo) / lo.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.family_rec(
                    Suite::Bounds,
                    "binom_ratio_upper",
                    p,
                    x,
                    q,
                    Some(hi),
                    (hi - q) / hi.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.family_rec(
                    Suite::Bounds,
                    "binom_ratio_basic",
                    p,
                    x,
                    q,
                    Some(v45),
                    (v45 - q) / v45.abs().max(1.0),
                    TOL_BOUND,
                ));
            }
            out.push(ctx.family_rec(
                Suite::Bounds,
                "order_binom_ratio",
                p,
                x,
                hi,
                Some(v45),
                (v45 - hi) / v45.abs().max(1.0),
                TOL_ORDERING,
            ));
        }
    }

    // sharpness orderings between the closed-form bounds
    let basic = bound_basic(p, x);
    if c.abs() < icx_core::bounds::poisson_threshold::<f64>() {
        if let (Ok(bp), Ok(bb)) = (bound_poisson(n, x), basic) {
            out.push(ctx.family_rec(
                Suite::Bounds,
                "order_poisson_basic",
                p,
                x,
                bp,
                Some(bb),
                (bb - bp) / bb.abs().max(1.0),
                TOL_ORDERING,
            ));
        }
    } else if let (Ok((tight, loose)), Ok(bb)) = (bound_logconvex(p, x), basic) {
        out.push(ctx.family_rec(
            Suite::Bounds,
            "order_tight_basic",
            p,
            x,
            tight,
            Some(bb),
            (bb - tight) / bb.abs().max(1.0),
            TOL_ORDERING,
        ));
        if let Some(loose) = loose {
            out.push(ctx.family_rec(
                Suite::Bounds,
                "order_tight_loose",
                p,
                x,
                tight,
                Some(loose),
                (loose - tight) / loose.abs().max(1.0),
                TOL_ORDERING,
            ));
        }
        if c == -1.0 {
            if let Ok((_, upper44)) = binom_ioc_bounds(p.l().expect("c = -1 has an order"), x) {
                out.push(ctx.family_rec(
                    Suite::Bounds,
                    "order_44_basic",
                    p,
                    x,
                    upper44,
                    Some(bb),
                    (bb - upper44) / bb.abs().max(1.0),
                    TOL_ORDERING,
                ));
            }
        }
    }

    out
}

/// Per-family checks that need the whole grid row or no grid at all.
fn family_checks(ctx: &Ctx, p: &FamilyParams64) -> Vec<CheckRecord> {
    let cfg = ctx.cfg;
    let mut out = Vec::new();
    let c = p.c();

    if cfg.has_suite(Suite::Bounds) && c > 0.0 {
        match asymptotic_exponent(p) {
            Ok((gamma, baseline)) => {
                let margin = baseline - gamma;
                let thresh = cfg.margin_tol.unwrap_or(GAP_EXPONENT);
                out.push(CheckRecord {
                    suite: Suite::Bounds.name(),
                    check: "exponent_gap".into(),
                    c: Some(c),
                    n: Some(p.n()),
                    x: None,
                    observed: gamma,
                    target: Some(baseline),
                    margin,
                    pass: margin > thresh,
                });
                let ratio_at = |t: f64| -> Option<f64> {
                    bound_logconvex(p, t)
                        .ok()
                        .map(|(tight, _)| tight / t.powf(gamma))
                };
                if let (Some(r0), Some(r3), Some(r4)) =
                    (ratio_at(1e2), ratio_at(1e3), ratio_at(1e4))
                {
                    for (tag, r, t) in [("tight_decay_1e3", r3, 1e3), ("tight_decay_1e4", r4, 1e4)]
                    {
                        out.push(ctx.family_rec(
                            Suite::Bounds,
                            tag,
                            p,
                            t,
                            r,
                            Some(2.0 * r0),
                            (2.0 * r0 - r) / (2.0 * r0).abs().max(1.0),
                            TOL_ORDERING,
                        ));
                    }
                }
            }
            Err(e) => out.push(ctx.error_rec(Suite::Bounds, "exponent_gap", p, 0.0, &e)),
        }
    }

    if cfg.has_suite(Suite::Entropy) {
        let xs = cfg.x_interior(p);
        if xs.len() < 3 {
            return out;
        }
        let values: Result<Vec<_>, _> = xs.iter().map(|&x| ioc(p, x, &cfg.eval)).collect();
        match values {
            Ok(s) => {
                let renyi: Vec<f64> = s.iter().map(|v| -v.ln()).collect();
                let tsallis: Vec<f64> = s.iter().map(|v| 1.0 - v).collect();
                let worst_dd = |v: &[f64]| -> (f64, f64) {
                    let mut worst = f64::NEG_INFINITY;
                    let mut at = xs[0];
                    for i in 1..v.len() - 1 {
                        let dd = v[i + 1] - 2.0 * v[i] + v[i - 1];
                        if dd > worst {
                            worst = dd;
                            at = xs[i];
                        }
                    }
                    (worst, at)
                };
                if c >= 0.0 {
                    let (dd, at) = worst_dd(&renyi);
                    out.push(ctx.family_rec(
                        Suite::Entropy,
                        "renyi_concave",
                        p,
                        at,
                        dd,
                        Some(0.0),
                        -dd,
                        TOL_ENTROPY_DD,
                    ));
                    let mut worst = f64::INFINITY;
                    let mut at = xs[0];
                    for i in 1..renyi.len() {
                        let d = renyi[i] - renyi[i - 1];
                        if d < worst {
                            worst = d;
                            at = xs[i];
                        }
                    }
                    out.push(ctx.family_rec(
                        Suite::Entropy,
                        "renyi_increasing",
                        p,
                        at,
                        worst,
                        Some(0.0),
                        worst,
                        TOL_ENTROPY_D1,
                    ));
                }
                let (dd, at) = worst_dd(&tsallis);
                out.push(ctx.family_rec(
                    Suite::Entropy,
                    "tsallis_concave",
                    p,
                    at,
                    dd,
                    Some(0.0),
                    -dd,
                    TOL_ENTROPY_DD,
                ));
            }
            Err(e) => out.push(ctx.error_rec(Suite::Entropy, "entropy_grid", p, 0.0, &e)),
        }
    }

    out
}

fn legendre_checks(ctx: &Ctx, n: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let nf = f64::from(n);
    for t in linspace(1.0, 10.0, 21) {
        let pair = match legendre_pair(n, t) {
            Ok(p) => p,
            Err(_) => continue,
        };
        {
            // Bonnet derivative identity residual
            if let Ok(prev) = legendre_pair(n - 1, t) {
                let lhs = (t * t - 1.0) * pair.dp;
                let rhs = nf * (t * pair.p - prev.p);
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                out.push(ctx.rec(
                    Suite::Legendre,
                    "bonnet",
                    None,
                    Some(nf),
                    Some(t),
                    lhs,
                    Some(rhs),
                    -((lhs - rhs).abs() / scale),
                    TOL_ORDERING,
                ));
            }
            if let Ok((lo, u41, u46)) = legendre_ratio_bounds(n, t) {
                let ratio = pair.dp / pair.p;
                out.push(ctx.rec(
                    Suite::Legendre,
                    "legendre_ratio_lower",
                    None,
                    Some(nf),
                    Some(t),
                    ratio,
                    Some(lo),
                    (ratio - lo) / lo.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.rec(
                    Suite::Legendre,
                    "legendre_ratio_sharp",
                    None,
                    Some(nf),
                    Some(t),
                    ratio,
                    Some(u41),
                    (u41 - ratio) / u41.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.rec(
                    Suite::Legendre,
                    "legendre_ratio_weak",
                    None,
                    Some(nf),
                    Some(t),
                    ratio,
                    Some(u46),
                    (u46 - ratio) / u46.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.rec(
                    Suite::Legendre,
                    "order_legendre_ratio",
                    None,
                    Some(nf),
                    Some(t),
                    u41,
                    Some(u46),
                    (u46 - u41) / u46.abs().max(1.0),
                    TOL_ORDERING,
                ));
            }
        }
        if n >= 2 {
            if let Ok((strong, weak)) = legendre_value_bounds(n, t) {
                out.push(ctx.rec(
                    Suite::Legendre,
                    "value_strong",
                    None,
                    Some(nf),
                    Some(t),
                    pair.p,
                    Some(strong),
                    (strong - pair.p) / strong.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.rec(
                    Suite::Legendre,
                    "value_weak",
                    None,
                    Some(nf),
                    Some(t),
                    pair.p,
                    Some(weak),
                    (weak - pair.p) / weak.abs().max(1.0),
                    TOL_BOUND,
                ));
                out.push(ctx.rec(
                    Suite::Legendre,
                    "order_strong_weak",
                    None,
                    Some(nf),
                    Some(t),
                    strong,
                    Some(weak),
                    (weak - strong) / weak.abs().max(1.0),
                    TOL_ORDERING,
                ));
            }
        }
    }
    out
}

fn quadrature_checks(ctx: &Ctx, n: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let p = match FamilyParams64::binomial(n) {
        Ok(p) => p,
        Err(_) => return out,
    };
    for t in linspace(0.0, 1.0, 21) {
        let series = ioc(&p, t, &ctx.cfg.eval);
        let quad = ioc_binomial_quadrature(n, t);
        match (series, quad) {
            (Ok(s), Ok(q)) => out.push(ctx.rec(
                Suite::Legendre,
                "quadrature_vs_series",
                Some(-1.0),
                Some(f64::from(n)),
                Some(t),
                q,
                Some(s),
                -((q - s).abs() / s),
                TOL_QUADRATURE,
            )),
            (Err(e), _) | (_, Err(e)) => {
                out.push(ctx.error_rec(Suite::Legendre, "quadrature_vs_series", &p, t, &e))
            }
        }
    }
    out
}

fn link_checks(ctx: &Ctx, l: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let p = match FamilyParams64::binomial(l) {
        Ok(p) => p,
        Err(_) => return out,
    };
    for x in ctx.cfg.x_interior(&p) {
        if x <= 0.0 || x >= 0.5 - 1e-9 {
            continue;
        }
        match legendre_ioc_link(l, x, &ctx.cfg.eval) {
            Ok(r) => out.push(ctx.rec(
                Suite::Legendre,
                "ioc_link",
                Some(-1.0),
                Some(f64::from(l)),
                Some(x),
                r,
                Some(0.0),
                -r.abs(),
                TOL_LINK,
            )),
            Err(e) => out.push(ctx.error_rec(Suite::Legendre, "ioc_link", &p, x, &e)),
        }
    }
    out
}

fn bessel_checks(ctx: &Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    // identity: e^{2nx} S_{n,0}(x) = I0(2nx)
    for n in [1.0, 2.0, 5.0] {
        let p = match FamilyParams64::poisson(n) {
            Ok(p) => p,
            Err(_) => continue,
        };
        for x in linspace(0.0, 10.0, 21) {
            let lhs = ioc(&p, x, &ctx.cfg.eval).map(|s| (2.0 * n * x).exp() * s);
            let rhs = bessel_i0(2.0 * n * x);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => out.push(ctx.rec(
                    Suite::Bessel,
                    "ioc_identity",
                    Some(0.0),
                    Some(n),
                    Some(x),
                    a,
                    Some(b),
                    -((a - b).abs() / b),
                    TOL_BESSEL_ID,
                )),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(ctx.error_rec(Suite::Bessel, "ioc_identity", &p, x, &e))
                }
            }
        }
    }
    for t in linspace(0.0, 10.0, 21) {
        if let (Ok(b), Ok(v)) = (bound_bessel(t), bessel_i0(t)) {
            out.push(ctx.rec(
                Suite::Bessel,
                "i0_bound",
                None,
                None,
                Some(t),
                v,
                Some(b),
                (b - v) / b.abs().max(1.0),
                TOL_BOUND,
            ));
            out.push(ctx.rec(
                Suite::Bessel,
                "i0_bound_ratio",
                None,
                None,
                Some(t),
                b / v,
                Some(3.0),
                3.0 - b / v,
                TOL_ORDERING,
            ));
        }
    }
    out
}

fn identity_checks(_ctx: &Ctx, n: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let make = |check: &str, k: u32, equal: bool, observed: f64| CheckRecord {
        suite: Suite::Identities.name(),
        check: check.into(),
        c: None,
        n: Some(f64::from(n)),
        x: Some(f64::from(k)),
        observed,
        target: None,
        margin: if equal { 0.0 } else { -1.0 },
        pass: equal,
    };
    let approx = |v: &icx_core::identities::ExactRational| -> f64 {
        num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)
    };
    for k in 0..=n {
        match identity_one(n, k) {
            Ok(chk) => out.push(make("identity_one", k, chk.equal, approx(&chk.lhs))),
            Err(_) => out.push(make("identity_one", k, false, f64::INFINITY)),
        }
        match identity_two(n, k) {
            Ok(chk) => out.push(make("identity_two", k, chk.equal, approx(&chk.lhs))),
            Err(_) => out.push(make("identity_two", k, false, f64::INFINITY)),
        }
    }
    out
}

/// Runs the configured suites over the grid and gathers a deterministic
/// report.
pub fn run_verify(cfg: &SweepConfig) -> SuiteReport {
    enum Job {
        Point(FamilyParams64, f64),
        Family(FamilyParams64),
        Legendre(u32),
        Quadrature(u32),
        Link(u32),
        Bessel,
        Identities(u32),
    }

    let ctx = Ctx { cfg };
    let mut jobs = Vec::new();
    let point_suites = [
        Suite::Normalization,
        Suite::Convexity,
        Suite::LogConvexity,
        Suite::Ode,
        Suite::Bounds,
        Suite::Entropy,
    ];
    if point_suites.iter().any(|&s| cfg.has_suite(s)) {
        for p in cfg.families() {
            for x in cfg.x_grid(&p) {
                jobs.push(Job::Point(p, x));
            }
            jobs.push(Job::Family(p));
        }
    }
    if cfg.has_suite(Suite::Legendre) {
        for n in 1..=cfg.legendre_max_n() {
            jobs.push(Job::Legendre(n));
        }
        for n in 1..=cfg.quadrature_max_n() {
            jobs.push(Job::Quadrature(n));
        }
        for l in 1..=cfg.l_max.min(cfg.legendre_max_n()) {
            jobs.push(Job::Link(l));
        }
    }
    if cfg.has_suite(Suite::Bessel) {
        jobs.push(Job::Bessel);
    }
    if cfg.has_suite(Suite::Identities) {
        for n in 0..=cfg.identities_max_n() {
            jobs.push(Job::Identities(n));
        }
    }

    let run = |job: &Job| -> Vec<CheckRecord> {
        match job {
            Job::Point(p, x) => point_checks(&ctx, p, *x),
            Job::Family(p) => family_checks(&ctx, p),
            Job::Legendre(n) => legendre_checks(&ctx, *n),
            Job::Quadrature(n) => quadrature_checks(&ctx, *n),
            Job::Link(l) => link_checks(&ctx, *l),
            Job::Bessel => bessel_checks(&ctx),
            Job::Identities(n) => identity_checks(&ctx, *n),
        }
    };

    let records: Vec<CheckRecord> = jobs.par_iter().map(run).collect::<Vec<_>>().concat();
    SuiteReport::new(records)
}
