//! `icx`: evaluate the index of coincidence and its entropies, sweep
//! grids to CSV, and machine-check the full battery of bounds,
//! identities and the ODE.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

mod eval;
mod grid;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grid::{Suite, SweepConfig};
use icx_core::FamilyParams64;
use report::{sweep_csv, SuiteReport};

#[derive(Parser)]
#[command(
    name = "icx",
    version,
    about = "Index-of-coincidence numerics: evaluate, sweep, verify"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// JSON configuration file; flags win over file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Curvature values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Option<Vec<f64>>,
    /// Size values for c >= 0, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<f64>>,
    /// Rows per family (endpoints included), at least 3.
    #[arg(long)]
    x_points: Option<usize>,
    /// Cap for the identities triangle and special-function scans.
    #[arg(long)]
    max_n: Option<u32>,
    /// Override every per-check margin tolerance (0 injects a fault).
    #[arg(long)]
    tol: Option<f64>,
    /// Rayon worker count (output is identical for any value).
    #[arg(long)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate S, S', S'', the entropies and every applicable bound at
    /// one point, as one JSON object.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        x: f64,
        /// Series truncation tolerance override.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the verification suites over the grid and emit a JSON report.
    Verify {
        #[command(flatten)]
        common: ConfigArgs,
        /// Suites to run, comma separated (default: all).
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<String>>,
    },
    /// Sweep the grid and emit the plot-ready CSV.
    Sweep {
        #[command(flatten)]
        common: ConfigArgs,
    },
    /// Check the two exact combinatorial identities over the full
    /// triangle 0 <= k <= n <= max-n.
    Identities {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn build_config(common: &ConfigArgs, suites: Option<&[String]>) -> anyhow::Result<SweepConfig> {
    let mut cfg = match &common.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::default(),
    };
    if let Some(c) = &common.c {
        cfg.c_list = c.clone();
    }
    if let Some(n) = &common.n {
        cfg.n_list = n.clone();
        cfg.n_explicit = true;
    }
    if let Some(xp) = common.x_points {
        cfg.x_points = xp;
    }
    if let Some(m) = common.max_n {
        cfg.max_n = Some(m);
    }
    if let Some(t) = common.tol {
        cfg.margin_tol = Some(t);
    }
    if let Some(w) = common.workers {
        cfg.workers = Some(w);
    }
    if let Some(names) = suites {
        cfg.suites = names
            .iter()
            .map(|s| Suite::parse(s))
            .collect::<anyhow::Result<Vec<_>>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn in_pool<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> anyhow::Result<R> {
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build()?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_eval(c: f64, n: f64, x: f64, tol: Option<f64>) -> anyhow::Result<bool> {
    let params = FamilyParams64::new(c, n).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut cfg = icx_core::EvalConfig64::default();
    if let Some(t) = tol {
        cfg.rel_tol = t;
    }
    let cfg = cfg.validated().map_err(|e| anyhow::anyhow!("{e}"))?;
    let rec = eval::eval_point(&params, x, &cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
    println!("{}", serde_json::to_string_pretty(&rec)?);
    Ok(true)
}

fn cmd_verify(cfg: &SweepConfig, out: Option<&PathBuf>) -> anyhow::Result<bool> {
    let report = in_pool(cfg.workers, || suites::run_verify(cfg))?;
    emit(out, &report.to_json())?;
    eprint!("{}", report.digest());
    Ok(report.all_pass())
}

fn cmd_sweep(cfg: &SweepConfig, out: Option<&PathBuf>) -> anyhow::Result<bool> {
    use rayon::prelude::*;
    let jobs: Vec<(FamilyParams64, f64)> = cfg
        .families()
        .into_iter()
        .flat_map(|p| cfg.x_grid(&p).into_iter().map(move |x| (p, x)))
        .collect();
    let rows = in_pool(cfg.workers, || {
        jobs.par_iter()
            .map(|(p, x)| eval::sweep_row(p, *x, &cfg.eval))
            .collect::<Vec<_>>()
    })?;
    let mut ok_rows = Vec::with_capacity(rows.len());
    for (row, (p, x)) in rows.into_iter().zip(&jobs) {
        match row {
            Ok(r) => ok_rows.push(r),
            Err(e) => eprintln!("skipping c={} n={} x={x}: {e}", p.c(), p.n()),
        }
    }
    ok_rows.sort_by(|a, b| {
        a.c.total_cmp(&b.c)
            .then(a.n.total_cmp(&b.n))
            .then(a.x.total_cmp(&b.x))
    });
    emit(out, &sweep_csv(&ok_rows))?;
    Ok(true)
}

fn cmd_identities(max_n: Option<u32>, out: Option<&PathBuf>) -> anyhow::Result<bool> {
    let cfg = SweepConfig {
        max_n,
        suites: vec![Suite::Identities],
        ..SweepConfig::default()
    };
    let report: SuiteReport = in_pool(None, || suites::run_verify(&cfg))?;
    emit(out, &report.to_json())?;
    eprint!("{}", report.digest());
    Ok(report.all_pass())
}

fn run() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Eval { c, n, x, tol } => cmd_eval(c, n, x, tol),
        Cmd::Verify { common, suites } => {
            let cfg = build_config(&common, suites.as_deref())?;
            cmd_verify(&cfg, common.out.as_ref())
        }
        Cmd::Sweep { common } => {
            let cfg = build_config(&common, None)?;
            let out = common
                .out
                .as_ref()
                .ok_or_else(|| anyhow::anyhow!("sweep requires --out <path>"))?;
            cmd_sweep(&cfg, Some(out))
        }
        Cmd::Identities { max_n, out } => cmd_identities(max_n, out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
