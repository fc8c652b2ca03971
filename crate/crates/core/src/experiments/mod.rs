//! Seeded, reproducible experiment runs with JSON records.
//!
//! Every command derives all randomness from its `seed` through per-trial
//! streams and reduces results in trial order, so re-running a record's
//! parameters reproduces its payload.

mod commands;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::rng::RNG_NAME;

pub use commands::{
    ArGraphParams, ArHyperParams, ArithExpParams, DensecapParams, DeviationParams, DirectionSpec, MixingParams,
    SparsifyParams, SubsetSpec, slice_family, EIGEN_BUDGET,
};

pub const SCHEMA: &str = "arithx/1";

/// Absolute tolerance (relative above magnitude 1) for float payload fields.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ExperimentParams {
    ArGraph(ArGraphParams),
    ArHyper(ArHyperParams),
    Mixing(MixingParams),
    ArithExp(ArithExpParams),
    Densecap(DensecapParams),
    Deviation(DeviationParams),
    Sparsify(SparsifyParams),
}

impl ExperimentParams {
    pub fn command(&self) -> &'static str {
        match self {
            ExperimentParams::ArGraph(_) => "ar_graph",
            ExperimentParams::ArHyper(_) => "ar_hyper",
            ExperimentParams::Mixing(_) => "mixing",
            ExperimentParams::ArithExp(_) => "arith_exp",
            ExperimentParams::Densecap(_) => "densecap",
            ExperimentParams::Deviation(_) => "deviation",
            ExperimentParams::Sparsify(_) => "sparsify",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ExperimentParams::ArGraph(p) => p.seed,
            ExperimentParams::ArHyper(p) => p.seed,
            ExperimentParams::Mixing(p) => p.seed,
            ExperimentParams::ArithExp(p) => p.seed,
            ExperimentParams::Densecap(p) => p.seed,
            ExperimentParams::Deviation(p) => p.seed,
            ExperimentParams::Sparsify(p) => p.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema: String,
    pub command: String,
    pub params: ExperimentParams,
    pub seed: u64,
    pub version: String,
    pub rng: String,
    pub wall_time_s: f64,
    pub payload: Value,
    pub verdicts: Vec<Verdict>,
}

impl ExperimentRecord {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub(crate) struct Outcome {
    pub payload: Value,
    pub verdicts: Vec<Verdict>,
}

pub fn run(params: &ExperimentParams) -> Result<ExperimentRecord> {
    let start = Instant::now();
    let outcome = match params {
        ExperimentParams::ArGraph(p) => commands::ar_graph_trial(p)?,
        ExperimentParams::ArHyper(p) => commands::ar_hypergraph_trial(p)?,
        ExperimentParams::Mixing(p) => commands::mixing_check(p)?,
        ExperimentParams::ArithExp(p) => commands::arithmetic_expander_check(p)?,
        ExperimentParams::Densecap(p) => commands::densecap_run(p)?,
        ExperimentParams::Deviation(p) => commands::deviation_run(p)?,
        ExperimentParams::Sparsify(p) => commands::sparsify_run(p)?,
    };
    Ok(ExperimentRecord {
        schema: SCHEMA.into(),
        command: params.command().into(),
        params: params.clone(),
        seed: params.seed(),
        version: env!("CARGO_PKG_VERSION").into(),
        rng: RNG_NAME.into(),
        wall_time_s: start.elapsed().as_secs_f64(),
        payload: outcome.payload,
        verdicts: outcome.verdicts,
    })
}

/// Runs a record's parameters again.
pub fn rerun(record: &ExperimentRecord) -> Result<ExperimentRecord> {
    run(&record.params)
}

/// Structural equality with integers, strings and booleans compared exactly
/// and floats within `tol` (relative above magnitude 1).
pub fn payload_matches(a: &Value, b: &Value, tol: f64) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            if x.is_f64() || y.is_f64() {
                let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
                (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
            } else {
                x == y
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(u, v)| payload_matches(u, v, tol))
        }
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len()
                && x.iter().all(|(k, u)| y.get(k).is_some_and(|v| payload_matches(u, v, tol)))
        }
        _ => a == b,
    }
}

/// Whether re-running `record` reproduces its payload and verdicts.
pub fn reproduces(record: &ExperimentRecord) -> Result<bool> {
    let again = rerun(record)?;
    Ok(payload_matches(&record.payload, &again.payload, FLOAT_TOLERANCE)
        && record.verdicts.iter().map(|v| v.pass).eq(again.verdicts.iter().map(|v| v.pass)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn payload_comparison() {
        let a = json!({"x": 1, "y": [1.0, 2.5], "s": "a"});
        let b = json!({"x": 1, "y": [1.0, 2.5 + 1e-14], "s": "a"});
        let c = json!({"x": 2, "y": [1.0, 2.5], "s": "a"});
        let d = json!({"x": 1, "y": [1.0, 2.6], "s": "a"});
        assert!(payload_matches(&a, &b, FLOAT_TOLERANCE));
        assert!(!payload_matches(&a, &c, FLOAT_TOLERANCE));
        assert!(!payload_matches(&a, &d, FLOAT_TOLERANCE));
        assert!(!payload_matches(&json!({"x": 1}), &json!({"x": 1, "z": 0}), FLOAT_TOLERANCE));
    }
}
