//! End-to-end tests of the `icx` binary: exit codes, output schemas, flag
//! and config handling.

use std::path::Path;
use std::process::{Command, Output};

fn icx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_bernoulli_point() {
    let out = icx(&["eval", "--c", "-1", "--n", "1", "--x", "0.25"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["S"], 0.625);
    assert_eq!(v["S2"], 4.0);
    assert_eq!(v["pass"], true);
    let ids: Vec<_> = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["id"].as_str().unwrap().to_string())
        .collect();
    assert!(ids.contains(&"bound_basic".to_string()));
    assert!(ids.contains(&"lower_44".to_string()));
}

#[test]
fn eval_poisson_matches_bessel_route() {
    let out = icx(&["eval", "--c", "0", "--n", "1", "--x", "0.5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let s = v["S"].as_f64().unwrap();
    assert!((s - 0.4657596076).abs() < 1e-9, "{s}");
    assert!(v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["id"] == "bound_poisson"));
}

#[test]
fn eval_rejects_invalid_parameters() {
    // n > c is violated
    let out = icx(&["eval", "--c", "1", "--n", "0.5", "--x", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n > c"));

    // non-integral binomial order
    let out = icx(&["eval", "--c", "-1", "--n", "2.5", "--x", "0.1"]);
    assert_eq!(out.status.code(), Some(2));

    // outside the domain
    let out = icx(&["eval", "--c", "-1", "--n", "2", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_slice_passes() {
    let out = icx(&[
        "verify",
        "--c",
        "0",
        "--n",
        "2",
        "--x-points",
        "7",
        "--suites",
        "normalization,ode,logconvexity",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["ode"]["fail"], 0);
    assert_eq!(v["summary"]["normalization"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().len() >= 21);
}

#[test]
fn verify_fault_injection_fails_with_records() {
    let out = icx(&[
        "verify",
        "--c",
        "0",
        "--n",
        "2",
        "--x-points",
        "5",
        "--suites",
        "normalization",
        "--tol",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["summary"]["normalization"]["fail"].as_u64().unwrap() > 0);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["pass"] == false));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = icx(&["verify", "--suites", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_subcommand() {
    let out = icx(&["identities", "--max-n", "12"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["identities"]["fail"], 0);
    // full triangle: 2 * sum_{n=0..12} (n+1) = 182 records
    assert_eq!(v["records"].as_array().unwrap().len(), 182);
}

#[test]
fn sweep_schema_and_cells() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = icx(&[
        "sweep",
        "--c",
        "1",
        "--n",
        "2",
        "--x-points",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "c,n,x,S,S1,S2,renyi2,tsallis2,shannon,bound_basic,bound_tight,bound_loose,bound_poisson,lower_44,upper_44,lower_int"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 16);
        // c = 1: binomial-only and Poisson-only cells stay empty
        assert_eq!(cells[12], "");
        assert_eq!(cells[13], "");
        assert_eq!(cells[14], "");
        assert_eq!(cells[15], "");
        assert!(!cells[10].is_empty() && !cells[11].is_empty());
    }
    // the x = 0 row pins S and every bound at 1
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[2].parse::<f64>().unwrap(), 0.0);
    assert_eq!(first[3].parse::<f64>().unwrap(), 1.0);
    assert_eq!(first[9].parse::<f64>().unwrap(), 1.0);
    assert_eq!(first[10].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn sweep_single_binomial_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let out = icx(&[
        "sweep",
        "--c",
        "-1",
        "--n",
        "3",
        "--x-points",
        "101",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 101);
    // odd interior count lands on x = 1/2 exactly, where the integrated
    // lower bound is e^{-6T} = e^{-1.5}
    let mid = rows
        .iter()
        .map(|r| r.split(',').collect::<Vec<_>>())
        .find(|cells| cells[2].parse::<f64>().unwrap() == 0.5)
        .expect("midpoint row");
    let lower_44 = mid[13].parse::<f64>().unwrap();
    assert_eq!(lower_44, (-1.5f64).exp());
    let s = mid[3].parse::<f64>().unwrap();
    assert!((s - 0.3125).abs() < 1e-14);
}

#[test]
fn sweep_requires_out() {
    let out = icx(&["sweep", "--c", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        r#"{"c_list": [0.0], "n_list": [3.0], "x_points": 9, "suites": ["ode"]}"#,
    )
    .unwrap();
    let csv_path = dir.path().join("s.csv");
    // flag --x-points 4 must win over the file's 9
    let out = icx(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--x-points",
        "4",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().count(), 1 + 4);

    let out = icx(&["verify", "--config", cfg_path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["summary"].as_object().unwrap().len(), 1);
    assert!(v["summary"]["ode"].is_object());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"mystery_knob": 3}"#).unwrap();
    let out = icx(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_is_a_usage_error() {
    let out = icx(&["verify", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(Path::new("/nonexistent/cfg.json").exists() == false);
}
