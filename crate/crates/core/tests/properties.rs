//! Property tests over randomized parameters: the structural invariants
//! that must hold at any admissible point, not just on the curated grids.

use proptest::prelude::*;

use icx_core::bounds::{bound_basic, bound_logconvex};
use icx_core::identities::{identity_one, identity_two};
use icx_core::ioc::{entropies, heun_residual, ioc, ioc_triple, reduce_negative_c};
use icx_core::pmf::pmf_normalization;
use icx_core::special::ioc_binomial_quadrature;
use icx_core::{EvalConfig64, FamilyParams64};

fn cfg() -> EvalConfig64 {
    EvalConfig64::default()
}

/// Admissible families spanning the three regimes.
fn family() -> impl Strategy<Value = FamilyParams64> {
    prop_oneof![
        // binomial-like: c < 0 with integral order
        (1u32..60, 0.1f64..3.0).prop_map(|(l, scale)| {
            let c = -scale;
            FamilyParams64::new(c, -c * f64::from(l)).unwrap()
        }),
        // Poisson
        (0.2f64..30.0).prop_map(|n| FamilyParams64::poisson(n).unwrap()),
        // negative binomial: n > c > 0
        (0.05f64..3.0, 1.01f64..8.0)
            .prop_map(|(c, ratio)| FamilyParams64::new(c, c * ratio).unwrap()),
    ]
}

/// An interior point of the family's domain (fraction of the span for
/// c < 0, a bounded range otherwise).
fn family_and_point() -> impl Strategy<Value = (FamilyParams64, f64)> {
    (family(), 1e-4f64..0.9999).prop_map(|(p, frac)| {
        let hi = if p.c() < 0.0 { p.domain_hi() } else { 4.0 };
        (p, frac * hi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weights_sum_to_one((p, x) in family_and_point()) {
        let sum = pmf_normalization(&p, x, &cfg()).unwrap();
        prop_assert!((sum - 1.0).abs() <= 1e-12, "sum = {sum}");
    }

    #[test]
    fn ioc_in_unit_interval((p, x) in family_and_point()) {
        let s = ioc(&p, x, &cfg()).unwrap();
        prop_assert!(s > 0.0 && s <= 1.0, "S = {s}");
    }

    #[test]
    fn convex_and_log_convex((p, x) in family_and_point()) {
        let t = ioc_triple(&p, x, &cfg()).unwrap();
        prop_assert!(t.s2 >= -1e-10, "S'' = {}", t.s2);
        let lc = t.s * t.s2 - t.s1 * t.s1;
        prop_assert!(lc >= -1e-10 * (t.s1 * t.s1).max(1.0), "det = {lc}");
    }

    #[test]
    fn ode_residual_stays_small((p, x) in family_and_point()) {
        let r = heun_residual(&p, x, &cfg()).unwrap();
        prop_assert!(r.abs() <= 1e-8, "residual = {r}");
    }

    #[test]
    fn entropies_are_consistent((p, x) in family_and_point()) {
        let e = entropies(&p, x, &cfg()).unwrap();
        let s = ioc(&p, x, &cfg()).unwrap();
        prop_assert!((e.renyi2 - (-s.ln())).abs() <= 1e-12 * e.renyi2.abs().max(1.0));
        prop_assert!((e.tsallis2 - (1.0 - s)).abs() <= 1e-14);
        prop_assert!(e.shannon >= e.renyi2 - 1e-10, "Shannon below Renyi-2");
    }

    #[test]
    fn upper_bounds_dominate((p, x) in family_and_point()) {
        let s = ioc(&p, x, &cfg()).unwrap();
        let basic = bound_basic(&p, x).unwrap();
        prop_assert!(basic >= s - 1e-10 * basic.max(1.0));
        let (tight, loose) = bound_logconvex(&p, x).unwrap();
        prop_assert!(tight >= s - 1e-10 * tight.max(1.0));
        if let Some(loose) = loose {
            prop_assert!(loose >= tight - 1e-10 * loose.max(1.0));
        }
        prop_assert!(basic >= tight - 1e-10 * basic.max(1.0));
    }

    #[test]
    fn binomial_symmetry(l in 1u32..80, t in 0.0f64..=1.0) {
        let p = FamilyParams64::binomial(l).unwrap();
        let a = ioc(&p, t, &cfg()).unwrap();
        let b = ioc(&p, 1.0 - t, &cfg()).unwrap();
        prop_assert!((a - b).abs() <= 4e-13, "l={l} t={t}: {a} vs {b}");
    }

    #[test]
    fn reduction_is_exact_for_dyadic_curvature(l in 1u32..40, frac in 0.01f64..0.99) {
        // -c t computes exactly for c = -0.5, so both routes must agree
        // to full precision, not just within tolerance
        let p = FamilyParams64::new(-0.5, 0.5 * f64::from(l)).unwrap();
        let t = frac * p.domain_hi();
        let (b, x) = reduce_negative_c(&p, t).unwrap();
        let lhs = ioc(&p, t, &cfg()).unwrap();
        let rhs = ioc(&b, x, &cfg()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 2e-13 * rhs);
    }

    #[test]
    fn quadrature_agrees_with_series(n in 1u32..120, t in 0.0f64..=1.0) {
        let p = FamilyParams64::binomial(n).unwrap();
        let s = ioc(&p, t, &cfg()).unwrap();
        let q = ioc_binomial_quadrature(n, t).unwrap();
        prop_assert!((q - s).abs() <= 1e-11 * s, "n={n} t={t}: {q} vs {s}");
    }

    #[test]
    fn identities_hold_exactly(n in 0u32..70, frac in 0.0f64..=1.0) {
        let k = (frac * f64::from(n)).round() as u32;
        prop_assert!(identity_one(n, k).unwrap().equal);
        prop_assert!(identity_two(n, k).unwrap().equal);
    }
}
