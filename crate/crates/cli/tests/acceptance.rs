//! Acceptance suite: every shipped claim, one test per criterion, each at
//! its stated tolerance over the default grid. Criteria 2-8 read the JSON
//! report of a single `icx verify` run over the default configuration;
//! criteria 1 and 9 drive the library and binary directly.

use std::process::Command;
use std::sync::OnceLock;

use icx_core::ioc::{ioc, reduce_negative_c};
use icx_core::special::{bessel_i0, ioc_binomial_quadrature};
use icx_core::{EvalConfig64, FamilyParams64};

fn icx_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icx"))
}

/// One full default `verify` report, shared by the record-driven criteria.
fn default_report() -> &'static serde_json::Value {
    static REPORT: OnceLock<serde_json::Value> = OnceLock::new();
    REPORT.get_or_init(|| {
        let out = icx_bin().arg("verify").output().expect("verify runs");
        assert!(
            out.status.success(),
            "default verify must exit 0; stderr:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        serde_json::from_slice(&out.stdout).expect("report is JSON")
    })
}

struct Records<'a>(Vec<&'a serde_json::Value>);

fn records_for(check_prefix: &str) -> Records<'static> {
    let recs = default_report()["records"]
        .as_array()
        .expect("records array")
        .iter()
        .filter(|r| r["check"].as_str().unwrap_or("").starts_with(check_prefix))
        .collect();
    Records(recs)
}

impl Records<'_> {
    /// Every record present (more than `at_least`) and none failing.
    fn all_pass(&self, what: &str, at_least: usize) {
        assert!(
            self.0.len() >= at_least,
            "{what}: expected at least {at_least} records, found {}",
            self.0.len()
        );
        let fails: Vec<_> = self.0.iter().filter(|r| r["pass"] != true).collect();
        assert!(
            fails.is_empty(),
            "{what}: {} violations, first: {}",
            fails.len(),
            fails[0]
        );
    }

    fn worst_margin(&self) -> f64 {
        self.0
            .iter()
            .filter_map(|r| r["margin"].as_f64())
            .fold(f64::INFINITY, f64::min)
    }
}

fn grid_21(lo: f64, hi: f64) -> Vec<f64> {
    (0..21).map(|i| lo + (hi - lo) * i as f64 / 20.0).collect()
}

#[test]
fn acceptance_1_oracle_agreement() {
    let cfg = EvalConfig64::default();

    // route 1: series vs Gauss-Chebyshev quadrature, binomial orders to 200
    for n in 1..=200u32 {
        let p = FamilyParams64::binomial(n).unwrap();
        for t in grid_21(0.0, 1.0) {
            let s = ioc(&p, t, &cfg).unwrap();
            let q = ioc_binomial_quadrature(n, t).unwrap();
            assert!(
                (q - s).abs() <= 1e-11 * s,
                "quadrature n={n} t={t}: {q} vs {s}"
            );
        }
    }

    // route 2: series vs the scaled modified-Bessel value for c = 0
    for n in [1.0, 2.0, 5.0] {
        let p = FamilyParams64::poisson(n).unwrap();
        for x in grid_21(0.0, 10.0) {
            let s = ioc(&p, x, &cfg).unwrap();
            let b = (-2.0 * n * x).exp() * bessel_i0(2.0 * n * x).unwrap();
            assert!(
                (s - b).abs() <= 1e-10 * b,
                "bessel route n={n} x={x}: {s} vs {b}"
            );
        }
    }

    // route 3: reduction of c < 0 to the binomial family
    for c in [-0.5, -2.0] {
        for l in 1..=40u32 {
            let p = FamilyParams64::new(c, -c * f64::from(l)).unwrap();
            let hi = p.domain_hi();
            for i in 1..=19 {
                let t = hi * i as f64 / 20.0;
                let a = ioc(&p, t, &cfg).unwrap();
                let (b, x) = reduce_negative_c(&p, t).unwrap();
                let r = ioc(&b, x, &cfg).unwrap();
                assert!(
                    (a - r).abs() <= 2e-13 * r,
                    "reduction c={c} l={l} t={t}: {a} vs {r}"
                );
            }
        }
    }
    println!("acceptance 1 (oracle agreement, three routes to S): PASS");
}

#[test]
fn acceptance_2_heun_ode_residual() {
    let recs = records_for("heun_residual");
    // every default grid point: 101 families x 43 rows
    recs.all_pass("ODE residual <= 1e-8", 4343);
    // the degenerate points are part of the sweep: x = 0 everywhere and
    // the exact midpoint -1/(2c) for c < 0
    let at_zero = recs.0.iter().filter(|r| r["x"] == 0.0).count();
    assert_eq!(at_zero, 101, "x = 0 rows present for every family");
    let at_mid = recs
        .0
        .iter()
        .filter(|r| {
            let c = r["c"].as_f64().unwrap_or(0.0);
            c < 0.0 && r["x"].as_f64() == Some(-1.0 / (2.0 * c))
        })
        .count();
    assert_eq!(at_mid, 80, "midpoint rows present for every c < 0 family");
    println!("acceptance 2 (ODE residual at every grid point): PASS");
}

#[test]
fn acceptance_3_inequality_battery() {
    let battery = [
        ("bound_basic", 4343),   // convexity bound, all families
        ("ratio_logconvex", 2000),      // log-derivative bound on its valid domain
        ("bound_tight", 4000),   // log-convexity bound, c != 0
        ("bound_loose", 600),    // loose tier, c > 0
        ("bound_poisson", 250),  // c = 0 specialization
        ("i0_bound", 21),        // modified-Bessel bound
        ("binom_ratio_lower", 800), // binomial ratio bracket
        ("binom_ratio_upper", 800),
        ("lower_44", 1700), // integrated bracket for S
        ("upper_44", 1700),
        ("binom_ratio_basic", 800),        // bound integrating to the basic one
        ("lower_int", 1700),      // integral-representation lower bound
        ("legendre_ratio_lower", 2000), // Legendre ratio bracket
        ("legendre_ratio_sharp", 2000),
        ("legendre_ratio_weak", 2000),
        ("value_strong", 2000), // Legendre value bounds
        ("value_weak", 2000),
    ];
    for (check, at_least) in battery {
        records_for(check).all_pass(check, at_least);
    }
    println!("acceptance 3 (inequality battery, zero violations): PASS");
}

#[test]
fn acceptance_4_sharpness_orderings() {
    let orderings = [
        ("order_tight_loose", 600),   // tight tier below loose tier
        ("order_poisson_basic", 250), // Poisson bound below basic, c = 0
        ("order_44_basic", 1700),     // integrated upper below basic, c = -1
        ("order_legendre_ratio", 2000),        // sharp Legendre ratio below weak
        ("order_strong_weak", 2000),  // strong value bound below weak
    ];
    for (check, at_least) in orderings {
        records_for(check).all_pass(check, at_least);
    }
    println!("acceptance 4 (sharpness orderings): PASS");
}

#[test]
fn acceptance_5_exponent_inequality() {
    let recs = records_for("exponent_gap");
    // c in {0.5, 1, 2} with n > c: 6 + 5 + 4 families
    recs.all_pass("decay exponent strictly better than baseline", 15);
    assert!(
        recs.worst_margin() > 1e-12,
        "strict margin violated: {}",
        recs.worst_margin()
    );
    println!("acceptance 5 (exponent inequality, strict): PASS");
}

#[test]
fn acceptance_6_convexity_family() {
    records_for("s2_nonneg").all_pass("S'' >= -1e-10", 4343);
    records_for("log_convexity").all_pass("S S'' - S'^2 >= -1e-10 rel", 4343);
    records_for("s1_nonpos").all_pass("S' <= 1e-10 for c >= 0", 900);
    records_for("cm_j3").all_pass("third derivative sign", 500);
    records_for("cm_j4").all_pass("fourth derivative sign", 500);
    records_for("fd_s1").all_pass("S' matches finite differences", 3900);
    records_for("fd_s2").all_pass("S'' matches finite differences", 3900);
    records_for("renyi_concave").all_pass("Renyi entropy concave, c >= 0", 21);
    records_for("renyi_increasing").all_pass("Renyi entropy increasing, c >= 0", 21);
    records_for("tsallis_concave").all_pass("Tsallis entropy concave, all c", 101);
    println!("acceptance 6 (convexity / log-convexity / monotonicity): PASS");
}

#[test]
fn acceptance_7_exact_identities() {
    let one = records_for("identity_one");
    let two = records_for("identity_two");
    // full triangle 0 <= k <= n <= 120
    let triangle = 121 * 122 / 2;
    assert_eq!(one.0.len(), triangle);
    assert_eq!(two.0.len(), triangle);
    one.all_pass("squared-weight identity, exact", triangle);
    two.all_pass("alternating identity, exact", triangle);
    assert_eq!(one.worst_margin(), 0.0, "exact equality, no tolerance");
    assert_eq!(two.worst_margin(), 0.0, "exact equality, no tolerance");
    println!("acceptance 7 (exact combinatorial identities, n <= 120): PASS");
}

#[test]
fn acceptance_8_symmetry_and_normalization() {
    let sym = records_for("symmetry");
    sym.all_pass("binomial symmetry |S(t) - S(1-t)| <= 4e-13", 800);
    assert!(sym.worst_margin() >= -4e-13);
    let norm = records_for("pmf_sum");
    norm.all_pass("|sum p - 1| <= 1e-12", 4343);
    assert!(norm.worst_margin() >= -1e-12);
    println!("acceptance 8 (symmetry and normalization): PASS");
}

#[test]
fn acceptance_9_deterministic_reports() {
    let run_verify = |workers: &str| -> Vec<u8> {
        let out = icx_bin()
            .args(["verify", "--workers", workers])
            .output()
            .expect("verify runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(
        run_verify("1"),
        run_verify("6"),
        "verify reports differ across worker counts"
    );

    let dir = tempfile::tempdir().unwrap();
    let sweep = |workers: &str, name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let out = icx_bin()
            .args([
                "sweep",
                "--workers",
                workers,
                "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .expect("sweep runs");
        assert!(out.status.success());
        std::fs::read(&path).unwrap()
    };
    assert_eq!(
        sweep("1", "a.csv"),
        sweep("5", "b.csv"),
        "sweep CSVs differ across worker counts"
    );
    println!("acceptance 9 (byte-identical reports across worker counts): PASS");
}
