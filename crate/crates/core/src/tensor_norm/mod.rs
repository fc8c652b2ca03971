//! Injective norms `‖A‖_{ℓ_p,…,ℓ_p} = sup A(x[1],…,x[t]) / Π‖x[s]‖_p`.
//!
//! For `t ≥ 3` the supremum is a nonconvex program, so the general routine
//! returns a certified lower bound (the value at an explicit feasible
//! witness). Exact values are available in small regimes through
//! [`multilinear_norm_oracle`] and, for graphs, through [`spectral`].

mod ascent;
mod dyadic;
mod lambda;
mod oracle;
mod real_form;
pub mod spectral;

use serde::{Deserialize, Serialize};

pub use ascent::{ascent_trace, dual_ball_argmax, lp_norm, multilinear_norm, AscentConfig};
pub use dyadic::{dyadic_bound_for_signs, dyadic_upper_bound, DyadicReport};
pub use lambda::{indicator_seed, lambda_k};
pub use oracle::{multilinear_norm_oracle, OracleConfig};
pub use real_form::RealForm;

/// Absolute tolerance on per-sweep objective improvement.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    CertifiedLowerBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    /// Unit vectors attaining `value`; absent for upper bounds.
    pub witness: Option<Vec<Vec<f64>>>,
    /// A certified upper bound accompanying a lower bound, when known.
    pub upper: Option<f64>,
    pub restarts_used: usize,
    pub iterations: usize,
    pub tolerance: f64,
}

impl NormEstimate {
    pub(crate) fn zero(t: usize, n: usize) -> Self {
        let mut e0 = vec![0.0; n];
        if n > 0 {
            e0[0] = 1.0;
        }
        NormEstimate {
            value: 0.0,
            kind: EstimateKind::Exact,
            witness: Some(vec![e0; t]),
            upper: Some(0.0),
            restarts_used: 0,
            iterations: 0,
            tolerance: 0.0,
        }
    }
}

/// Parses an exponent: a number `≥ 1` or `inf`.
pub fn parse_exponent(s: &str) -> crate::Result<f64> {
    let p = match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        other => other
            .parse::<f64>()
            .map_err(|_| crate::Error::Parse(format!("bad exponent {s:?}")))?,
    };
    check_exponent(p)?;
    Ok(p)
}

pub(crate) fn check_exponent(p: f64) -> crate::Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(crate::Error::domain(format!("exponent p = {p} must lie in [1, ∞]")))
    } else {
        Ok(())
    }
}

pub fn format_exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Serde adapter writing `p = ∞` as the string `"inf"` (JSON has no infinity).
pub mod exponent_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if p.is_infinite() {
            Repr::Text("inf".into()).serialize(s)
        } else {
            Repr::Num(*p).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(p) => Ok(p),
            Repr::Text(s) => super::parse_exponent(&s).map_err(serde::de::Error::custom),
        }
    }
}
