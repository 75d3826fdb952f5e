//! CSV and JSON renderings of curves, verdicts, reports and sample batches.
//!
//! Numbers in CSV use `{:.16e}`, 17 significant digits, which round-trips
//! every `f64`. JSON documents are wrapped in envelopes carrying
//! `schema: 1` and reject unknown fields when read back.

use std::fmt::Write as _;

use record_aging::numerics::Direction;
use record_aging::theorems::CurveCheck;
use record_aging::{CurveSeries, OrderVerdict, Overall, RecordKind, SampleBatch, SamplingMethod, TheoremReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Two-column CSV with a `t,value` (or `u,value`) header.
pub fn curve_csv(curve: &CurveSeries) -> String {
    let mut out = format!("{},value\n", curve.x_label);
    for (x, v) in curve.xs.iter().zip(&curve.values) {
        let _ = writeln!(out, "{x:.16e},{v:.16e}");
    }
    out
}

/// Single-column CSV of sampled values, preceded by `#` comment lines that
/// record how the batch was drawn.
pub fn samples_csv(batch: &SampleBatch) -> String {
    let method = match batch.method {
        SamplingMethod::GammaTransform => "gamma",
        SamplingMethod::SequentialScan => "scan",
    };
    let kind = match batch.kind {
        RecordKind::Upper => "upper",
        RecordKind::Lower => "lower",
    };
    let mut out = format!(
        "# dist={} kind={kind} n={} count={} seed={} method={method}\nvalue\n",
        batch.base,
        batch.n,
        batch.values.len(),
        batch.seed
    );
    for v in &batch.values {
        let _ = writeln!(out, "{v:.16e}");
    }
    out
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderOutput {
    pub schema: u32,
    pub command: String,
    pub order: String,
    pub x: String,
    pub y: Option<String>,
    /// Smallest and largest rate ratio seen on the grid, for ratio orders.
    pub ratio_range: Option<[f64; 2]>,
    pub verdict: OrderVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveOutput {
    pub schema: u32,
    pub command: String,
    pub dist: String,
    pub kind: RecordKind,
    pub n: usize,
    pub quantity: String,
    pub curve: CurveSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremOutput {
    pub schema: u32,
    pub command: String,
    pub theorem: u8,
    pub overall: Overall,
    /// Supremum of the `ψ` ratio, for the theorems that use it.
    pub sup: Option<f64>,
    /// Rate-ratio limit at `0⁺` (hazard for upper, reversed hazard for lower
    /// records).
    pub c0: Option<f64>,
    /// Rate-ratio limit at `+∞`.
    pub c1: Option<f64>,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub name: String,
    pub file: String,
    pub points: usize,
    pub expected: Option<Direction>,
    pub check: Option<CurveCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleOutput {
    pub schema: u32,
    pub command: String,
    pub example: String,
    pub passed: bool,
    pub curves: Vec<CurveFile>,
    pub report: TheoremReport,
}
