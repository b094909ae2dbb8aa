//! Single-point evaluation record and sweep-row construction.

use serde::Serialize;

use icx_core::bounds::{bound_report, BoundId};
use icx_core::ioc::{entropies, ioc_triple};
use icx_core::{EvalConfig64, FamilyParams64, Result};

use crate::report::SweepRow;

#[derive(Debug, Serialize)]
pub struct BoundCell {
    pub id: &'static str,
    pub value: f64,
    /// Signed slack in the favorable direction (upper: bound - S, lower:
    /// S - bound).
    pub margin: f64,
}

/// Everything `eval` prints for one point.
#[derive(Debug, Serialize)]
pub struct EvalRecord {
    pub c: f64,
    pub n: f64,
    pub x: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    pub renyi2: f64,
    pub tsallis2: f64,
    pub shannon: f64,
    pub bounds: Vec<BoundCell>,
    pub pass: bool,
}

pub fn eval_point(params: &FamilyParams64, x: f64, cfg: &EvalConfig64) -> Result<EvalRecord> {
    let t = ioc_triple(params, x, cfg)?;
    let e = entropies(params, x, cfg)?;
    let rep = bound_report(params, x, cfg)?;
    Ok(EvalRecord {
        c: params.c(),
        n: params.n(),
        x,
        s: t.s,
        s1: t.s1,
        s2: t.s2,
        renyi2: e.renyi2,
        tsallis2: e.tsallis2,
        shannon: e.shannon,
        bounds: rep
            .bounds
            .iter()
            .map(|&(id, value, margin)| BoundCell {
                id: id.wire_name(),
                value,
                margin,
            })
            .collect(),
        pass: rep.pass,
    })
}

pub fn sweep_row(params: &FamilyParams64, x: f64, cfg: &EvalConfig64) -> Result<SweepRow> {
    let rec = eval_point(params, x, cfg)?;
    let cell = |id: BoundId| -> Option<f64> {
        rec.bounds
            .iter()
            .find(|b| b.id == id.wire_name())
            .map(|b| b.value)
    };
    Ok(SweepRow {
        c: rec.c,
        n: rec.n,
        x,
        s: rec.s,
        s1: rec.s1,
        s2: rec.s2,
        renyi2: rec.renyi2,
        tsallis2: rec.tsallis2,
        shannon: rec.shannon,
        bound_basic: cell(BoundId::Basic),
        bound_tight: cell(BoundId::LogConvexTight),
        bound_loose: cell(BoundId::LogConvexLoose),
        bound_poisson: cell(BoundId::PoissonSharp),
        lower_44: cell(BoundId::BinomRatioLower),
        upper_44: cell(BoundId::BinomRatioUpper),
        lower_int: cell(BoundId::BinomIntegralLower),
    })
}
