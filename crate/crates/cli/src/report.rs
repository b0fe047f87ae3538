//! JSON report emitted by every command. Key names are stable; absent
//! sections serialize as `null` so consumers can rely on the shape.

use std::collections::BTreeMap;

use serde::Serialize;
use summab_core::{
    CheckOutcome, ConditionEntry, ConvergenceDiagnostic, GrowthWitness, HypothesisReport,
    IndexSeries, Rollup,
};

use crate::scenario::Scenario;

#[derive(Debug, Serialize)]
pub struct Report {
    pub scenario: ScenarioEcho,
    pub command: String,
    pub conditions: Option<BTreeMap<String, ConditionJson>>,
    pub index: Option<IndexJson>,
    pub decomposition: Option<DecompositionJson>,
    pub provenance: Provenance,
}

#[derive(Debug, Serialize)]
pub struct ScenarioEcho {
    pub name: String,
    pub horizon: usize,
    pub k: f64,
    pub terms: String,
    pub weights: String,
    pub x: String,
    pub lambda: String,
    pub beta: String,
    pub matrix: String,
    pub index_method: String,
    pub preset: String,
    pub tolerances: TolerancesEcho,
}

#[derive(Debug, Serialize)]
pub struct TolerancesEcho {
    pub slope_tol: f64,
    pub residual_tol: f64,
    pub block_rho: f64,
    pub beta_tol: f64,
    pub ratio_cap: f64,
    pub abs_tol: f64,
}

impl ScenarioEcho {
    pub fn from_scenario(sc: &Scenario) -> Self {
        ScenarioEcho {
            name: sc.name.clone(),
            horizon: sc.horizon,
            k: sc.k,
            terms: sc.terms.label(),
            weights: sc.weights.label(),
            x: sc.x.label(),
            lambda: sc.lambda.label(),
            beta: sc.beta.label(),
            matrix: sc.matrix.label(),
            index_method: sc.index_method.label(),
            preset: sc.preset.label().to_string(),
            tolerances: TolerancesEcho {
                slope_tol: sc.tol.slope_tol,
                residual_tol: sc.tol.residual_tol,
                block_rho: sc.tol.block_rho,
                beta_tol: sc.tol.beta_tol,
                ratio_cap: sc.tol.ratio_cap,
                abs_tol: sc.tol.abs_tol,
            },
        }
    }
}

/// One condition: either a growth witness, an exact pointwise check, or a
/// dyadic-block trend.
#[derive(Debug, Serialize)]
pub struct ConditionJson {
    pub kind: &'static str,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_sup: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
}

impl ConditionJson {
    pub fn from_witness(w: &GrowthWitness<f64>) -> Self {
        ConditionJson {
            kind: "witness",
            verdict: w.verdict().as_str().to_string(),
            ratio_sup: Some(w.ratio_sup()),
            argmax: Some(w.argmax_index()),
            tail_slope: Some(w.tail_slope()),
            violation: None,
            blocks: None,
            ratios: None,
        }
    }

    pub fn from_check(c: &CheckOutcome) -> Self {
        ConditionJson {
            kind: "check",
            verdict: if c.pass { "pass" } else { "fail" }.to_string(),
            ratio_sup: None,
            argmax: None,
            tail_slope: None,
            violation: c.violation.map(|v| v.to_string()),
            blocks: None,
            ratios: None,
        }
    }

    pub fn from_trend(t: &ConvergenceDiagnostic<f64>) -> Self {
        ConditionJson {
            kind: "trend",
            verdict: t.verdict().as_str().to_string(),
            ratio_sup: None,
            argmax: None,
            tail_slope: None,
            violation: None,
            blocks: Some(t.blocks().to_vec()),
            ratios: Some(t.ratios().to_vec()),
        }
    }

    pub fn from_entry(entry: &ConditionEntry<f64>) -> Self {
        match entry {
            ConditionEntry::Witness(w) => ConditionJson::from_witness(w),
            ConditionEntry::Check(c) => ConditionJson::from_check(c),
            ConditionEntry::Trend(t) => ConditionJson::from_trend(t),
        }
    }
}

pub fn conditions_map(report: &HypothesisReport<f64>) -> BTreeMap<String, ConditionJson> {
    report
        .entries()
        .map(|(id, entry)| (id.to_string(), ConditionJson::from_entry(entry)))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct IndexJson {
    pub method: String,
    pub k: f64,
    #[serde(rename = "T_final")]
    pub t_final: f64,
    pub blocks: Vec<f64>,
    pub verdict: String,
}

impl IndexJson {
    pub fn from_series(series: &IndexSeries<f64>, diag: &ConvergenceDiagnostic<f64>) -> Self {
        IndexJson {
            method: series.method().label(),
            k: series.k(),
            t_final: series.final_value(),
            blocks: diag.blocks().to_vec(),
            verdict: diag.verdict().as_str().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub residual_max: f64,
    pub residual_argmax: usize,
    pub residual_ok: bool,
    /// The four split series in order: boundary, matrix-difference,
    /// weight-ratio-difference, factor-difference.
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    #[serde(rename = "T_final")]
    pub t_final: f64,
    pub verdict: String,
    pub blocks: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct Provenance {
    /// Rollup over everything the command checked: pass | fail | inconclusive.
    pub overall: String,
    pub beta: String,
    /// Scenario keys that fell back to defaults, sorted.
    pub defaults: Vec<String>,
    /// Free-form remarks (overrides applied, skipped comparisons, ...).
    pub notes: Vec<String>,
}

impl Report {
    /// Pretty JSON, trailing newline, byte-stable for identical inputs.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

pub fn rollup_exit_code(r: Rollup) -> i32 {
    match r {
        Rollup::Pass => 0,
        Rollup::Fail => 1,
        Rollup::Inconclusive => 2,
    }
}
