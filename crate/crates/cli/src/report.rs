//! Machine-readable reports: per-check records, per-suite summaries, and
//! the plot-ready CSV schema.

use std::collections::BTreeMap;

use serde::Serialize;

/// One verified check. `margin` is the signed slack of the comparison
/// (zero at the equality boundary, positive is good); `pass` applies the
/// check's tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub observed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub margin: f64,
    pub pass: bool,
}

impl CheckRecord {
    fn sort_key(&self) -> (&'static str, f64, f64, f64, &str) {
        (
            self.suite,
            self.c.unwrap_or(f64::NEG_INFINITY),
            self.n.unwrap_or(f64::NEG_INFINITY),
            self.x.unwrap_or(f64::NEG_INFINITY),
            &self.check,
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub pass: u64,
    pub fail: u64,
    pub worst_margin: f64,
}

/// Full verification report: summary per suite plus every record, in a
/// fixed order so reruns are byte-identical.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub summary: BTreeMap<&'static str, SuiteSummary>,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| {
            let (sa, ca, na, xa, ka) = a.sort_key();
            let (sb, cb, nb, xb, kb) = b.sort_key();
            sa.cmp(sb)
                .then(ca.total_cmp(&cb))
                .then(na.total_cmp(&nb))
                .then(xa.total_cmp(&xb))
                .then(ka.cmp(kb))
        });
        let mut summary: BTreeMap<&'static str, SuiteSummary> = BTreeMap::new();
        for r in &records {
            let s = summary.entry(r.suite).or_insert(SuiteSummary {
                pass: 0,
                fail: 0,
                worst_margin: f64::INFINITY,
            });
            if r.pass {
                s.pass += 1;
            } else {
                s.fail += 1;
            }
            s.worst_margin = s.worst_margin.min(r.margin);
        }
        Self { summary, records }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.values().all(|s| s.fail == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Short human-readable digest, one line per suite.
    pub fn digest(&self) -> String {
        let mut out = String::new();
        for (suite, s) in &self.summary {
            out.push_str(&format!(
                "{suite}: {} pass, {} fail, worst margin {:.3e}\n",
                s.pass, s.fail, s.worst_margin
            ));
        }
        out
    }
}

/// Fixed sweep CSV header.
pub const SWEEP_HEADER: &str = "c,n,x,S,S1,S2,renyi2,tsallis2,shannon,bound_basic,bound_tight,bound_loose,bound_poisson,lower_44,upper_44,lower_int";

/// One sweep row; `None` cells stay empty in the CSV.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub c: f64,
    pub n: f64,
    pub x: f64,
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
    pub renyi2: f64,
    pub tsallis2: f64,
    pub shannon: f64,
    pub bound_basic: Option<f64>,
    pub bound_tight: Option<f64>,
    pub bound_loose: Option<f64>,
    pub bound_poisson: Option<f64>,
    pub lower_44: Option<f64>,
    pub upper_44: Option<f64>,
    pub lower_int: Option<f64>,
}

/// 17 significant digits, enough to round-trip binary64.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_g17).unwrap_or_default()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 200 + SWEEP_HEADER.len() + 1);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_g17(r.c),
            fmt_g17(r.n),
            fmt_g17(r.x),
            fmt_g17(r.s),
            fmt_g17(r.s1),
            fmt_g17(r.s2),
            fmt_g17(r.renyi2),
            fmt_g17(r.tsallis2),
            fmt_g17(r.shannon),
            fmt_opt(r.bound_basic),
            fmt_opt(r.bound_tight),
            fmt_opt(r.bound_loose),
            fmt_opt(r.bound_poisson),
            fmt_opt(r.lower_44),
            fmt_opt(r.upper_44),
            fmt_opt(r.lower_int),
        ));
    }
    out
}
