//! Sweep configuration and grid construction.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;

use icx_core::{EvalConfig64, FamilyParams64};

/// Verification suites, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Normalization,
    Convexity,
    LogConvexity,
    Ode,
    Bounds,
    Legendre,
    Bessel,
    Identities,
    Entropy,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Normalization,
        Suite::Convexity,
        Suite::LogConvexity,
        Suite::Ode,
        Suite::Bounds,
        Suite::Legendre,
        Suite::Bessel,
        Suite::Identities,
        Suite::Entropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Convexity => "convexity",
            Suite::LogConvexity => "logconvexity",
            Suite::Ode => "ode",
            Suite::Bounds => "bounds",
            Suite::Legendre => "legendre",
            Suite::Bessel => "bessel",
            Suite::Identities => "identities",
            Suite::Entropy => "entropy",
        }
    }

    pub fn parse(s: &str) -> anyhow::Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .with_context(|| {
                let known: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite '{s}' (known: {})", known.join(", "))
            })
    }
}

/// JSON form of the configuration; every field optional, flags win over
/// file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub c_list: Option<Vec<f64>>,
    pub n_list: Option<Vec<f64>>,
    pub l_max: Option<u32>,
    pub x_points: Option<usize>,
    pub x_max: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub deriv_step: Option<f64>,
    pub suites: Option<Vec<String>>,
    pub max_n: Option<u32>,
    pub margin_tol: Option<f64>,
    pub workers: Option<usize>,
}

/// Resolved sweep/verify configuration.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub c_list: Vec<f64>,
    pub n_list: Vec<f64>,
    /// When `n_list` came from a flag or config file it also selects the
    /// `c < 0` families; otherwise those default to orders `1..=l_max`.
    pub n_explicit: bool,
    /// Binomial orders `1..=l_max` used for every `c < 0`.
    pub l_max: u32,
    /// Rows per `(c, n)` pair, endpoints included; the interior grid keeps
    /// a `1e-6 * domain-length` margin away from the singular endpoints.
    pub x_points: usize,
    /// Domain truncation for the unbounded `c >= 0` families.
    pub x_max: f64,
    pub eval: EvalConfig64,
    pub suites: Vec<Suite>,
    /// Cap for the identities triangle and the Legendre/quadrature scans.
    pub max_n: Option<u32>,
    /// When set, replaces every per-check margin tolerance.
    pub margin_tol: Option<f64>,
    pub workers: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            c_list: vec![-1.0, -0.5, 0.0, 0.5, 1.0, 2.0],
            n_list: vec![1.0, 2.0, 3.0, 5.0, 10.0, 25.0],
            n_explicit: false,
            l_max: 40,
            x_points: 43,
            x_max: 5.0,
            eval: EvalConfig64::default(),
            suites: Suite::ALL.to_vec(),
            max_n: None,
            margin_tol: None,
            workers: None,
        }
    }
}

impl SweepConfig {
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        let mut cfg = Self::default();
        cfg.apply(file)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, file: ConfigFile) -> anyhow::Result<()> {
        if let Some(v) = file.c_list {
            self.c_list = v;
        }
        if let Some(v) = file.n_list {
            self.n_list = v;
            self.n_explicit = true;
        }
        if let Some(v) = file.l_max {
            self.l_max = v;
        }
        if let Some(v) = file.x_points {
            self.x_points = v;
        }
        if let Some(v) = file.x_max {
            self.x_max = v;
        }
        if let Some(v) = file.rel_tol {
            self.eval.rel_tol = v;
        }
        if let Some(v) = file.max_terms {
            self.eval.max_terms = v;
        }
        if let Some(v) = file.deriv_step {
            self.eval.deriv_step = v;
        }
        if let Some(names) = file.suites {
            self.suites = names
                .iter()
                .map(|s| Suite::parse(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
        }
        if let Some(v) = file.max_n {
            self.max_n = Some(v);
        }
        if let Some(v) = file.margin_tol {
            self.margin_tol = Some(v);
        }
        if let Some(v) = file.workers {
            self.workers = Some(v);
        }
        Ok(())
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.x_points < 3 {
            bail!("x_points must be at least 3, got {}", self.x_points);
        }
        if !(self.x_max > 0.0) {
            bail!("x_max must be positive, got {}", self.x_max);
        }
        if self.l_max < 1 {
            bail!("l_max must be at least 1");
        }
        self.eval.validated().map_err(|e| anyhow::anyhow!("{e}"))?;
        if self.suites.is_empty() {
            bail!("no suites selected");
        }
        Ok(())
    }

    pub fn has_suite(&self, suite: Suite) -> bool {
        self.suites.contains(&suite)
    }

    /// Families covered by the grid: for `c < 0` every order `1..=l_max`,
    /// for `c >= 0` the configured `n` values with `n > c` enforced by
    /// filtering.
    pub fn families(&self) -> Vec<FamilyParams64> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &c in &self.c_list {
            if c < 0.0 && !self.n_explicit {
                for l in 1..=self.l_max {
                    if let Ok(p) = FamilyParams64::new(c, -c * f64::from(l)) {
                        if seen.insert((c.to_bits(), p.n().to_bits())) {
                            out.push(p);
                        }
                    }
                }
            } else {
                for &n in &self.n_list {
                    if let Ok(p) = FamilyParams64::new(c, n) {
                        if seen.insert((c.to_bits(), n.to_bits())) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// Domain grid for one family: both endpoint rows plus a uniform
    /// interior grid inset by `1e-6 * domain-length` from each end. For
    /// `c < 0` the interior is built symmetrically, so an odd point count
    /// lands on the midpoint `-1/(2c)` exactly.
    pub fn x_grid(&self, params: &FamilyParams64) -> Vec<f64> {
        let hi = if params.c() < 0.0 {
            params.domain_hi()
        } else {
            self.x_max
        };
        let margin = 1e-6 * hi;
        let q = self.x_points - 2;
        let mut xs = Vec::with_capacity(self.x_points);
        xs.push(0.0);
        if q == 1 {
            xs.push(hi / 2.0);
        } else if params.c() < 0.0 {
            let step = (hi - 2.0 * margin) / (q as f64 - 1.0);
            let half = q / 2;
            for i in 0..half {
                xs.push(margin + step * i as f64);
            }
            if q % 2 == 1 {
                xs.push(hi / 2.0);
            }
            for i in (0..half).rev() {
                xs.push(hi - (margin + step * i as f64));
            }
        } else {
            let step = (hi - 2.0 * margin) / (q as f64 - 1.0);
            for i in 0..q {
                xs.push(margin + step * i as f64);
            }
        }
        xs.push(hi);
        xs
    }

    /// Interior points only (no endpoint rows).
    pub fn x_interior(&self, params: &FamilyParams64) -> Vec<f64> {
        let xs = self.x_grid(params);
        xs[1..xs.len() - 1].to_vec()
    }

    pub fn identities_max_n(&self) -> u32 {
        self.max_n.unwrap_or(120).min(500)
    }

    pub fn quadrature_max_n(&self) -> u32 {
        self.max_n.unwrap_or(200).min(10_000)
    }

    pub fn legendre_max_n(&self) -> u32 {
        self.max_n.unwrap_or(100)
    }
}
