use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sigma::sigma;
use super::substochastic::PlaneSubstochasticForm;
use crate::error::{Error, Result};
use crate::hypergraph::MultilinearForm;
use crate::rng;
use crate::stats::{summarize, Summary};
use crate::tensor_norm::{exponent_serde, multilinear_norm, AscentConfig, NormEstimate, RealForm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationExperiment {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    #[serde(with = "exponent_serde")]
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    /// Per-trial certified lower bounds on `‖Σ ε_i A_i‖`.
    pub values: Vec<f64>,
    /// `values / k`, i.e. `‖(1/k) Σ ε_i A_i‖`.
    pub normalized: Vec<f64>,
    pub summary: Summary,
    pub normalized_summary: Summary,
    /// `σ_{p,t}(n)` when defined (`t ≥ 3`, `n ≥ 2`).
    pub sigma: Option<f64>,
    /// `mean / (√k σ)`.
    pub ratio: Option<f64>,
}

/// The CSV summary row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub p: String,
    pub mean: f64,
    pub median: f64,
    pub q90: f64,
    pub sigma: Option<f64>,
    pub ratio: Option<f64>,
}

impl DeviationExperiment {
    pub fn row(&self) -> DeviationRow {
        DeviationRow {
            k: self.k,
            n: self.n,
            t: self.t,
            p: crate::tensor_norm::format_exponent(self.p),
            mean: self.summary.mean,
            median: self.summary.median,
            q90: self.summary.q90,
            sigma: self.sigma,
            ratio: self.ratio,
        }
    }
}

fn check_family(forms: &[MultilinearForm]) -> Result<(usize, usize)> {
    let first = forms.first().ok_or_else(|| Error::domain("empty form family"))?;
    let (t, n) = (first.t(), first.n());
    for (i, f) in forms.iter().enumerate() {
        if f.t() != t || f.n() != n {
            return Err(Error::domain(format!("form {i} has a different shape")));
        }
    }
    Ok((t, n))
}

fn trial_config(config: &AscentConfig, seed: u64, trial: usize) -> AscentConfig {
    AscentConfig {
        seed: rng::derive_seed(seed, trial as u64),
        ..config.clone()
    }
}

/// Estimates `‖Σ_i ε_i A_i‖_{ℓ_p,…,ℓ_p}` for independent Rademacher signs,
/// one sign vector per trial.
pub fn rademacher_deviation(
    forms: &[MultilinearForm],
    p: f64,
    trials: usize,
    seed: u64,
    config: &AscentConfig,
) -> Result<DeviationExperiment> {
    let (t, n) = check_family(forms)?;
    for f in forms {
        PlaneSubstochasticForm::new(f.clone())?;
    }
    let real: Vec<RealForm> = forms.iter().map(RealForm::from_form).collect();
    let refs: Vec<&RealForm> = real.iter().collect();
    let k = forms.len();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::substream(seed, trial as u64);
            let signs: Vec<f64> = (0..k).map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let sum = RealForm::combine(&refs, &signs);
            multilinear_norm(&sum, p, &trial_config(config, seed, trial)).map(|e| e.value)
        })
        .collect::<Result<_>>()?;
    let normalized: Vec<f64> = values.iter().map(|v| v / k as f64).collect();
    let summary = summarize(&values);
    let sigma = sigma(p, t, n).ok();
    let ratio = sigma.map(|s| summary.mean / ((k as f64).sqrt() * s));
    Ok(DeviationExperiment {
        k,
        n,
        t,
        p,
        trials,
        seed,
        normalized_summary: summarize(&normalized),
        values,
        normalized,
        summary,
        sigma,
        ratio,
    })
}

/// `‖(1/k) Σ_i (A_i − Ā)‖_{ℓ_p,…,ℓ_p}` for a given mean form `Ā`.
pub fn centered_deviation(
    forms: &[MultilinearForm],
    mean: &MultilinearForm,
    p: f64,
    config: &AscentConfig,
) -> Result<NormEstimate> {
    check_family(forms)?;
    let k = forms.len() as f64;
    let real: Vec<RealForm> = forms.iter().map(RealForm::from_form).collect();
    let mean = RealForm::from_form(mean);
    let mut refs: Vec<&RealForm> = real.iter().collect();
    refs.push(&mean);
    let mut coeffs = vec![1.0 / k; forms.len()];
    coeffs.push(-1.0);
    multilinear_norm(&RealForm::combine(&refs, &coeffs), p, config)
}

/// How the expectation `E[A]` of a sampled family is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MeanKind {
    /// The average of the finite population (the exact expectation of
    /// uniform sampling from it).
    Exact,
    /// The average of `samples` independent draws.
    Empirical { samples: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenteredDeviationExperiment {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    #[serde(with = "exponent_serde")]
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub mean_kind: MeanKind,
    pub values: Vec<f64>,
    pub summary: Summary,
}

/// Per trial, draws `k` forms uniformly with replacement from `population`
/// and estimates `‖(1/k) Σ (A_i − E[A])‖`.
#[allow(clippy::too_many_arguments)]
pub fn sampled_centered_deviation(
    population: &[MultilinearForm],
    k: usize,
    p: f64,
    trials: usize,
    seed: u64,
    mean_kind: MeanKind,
    config: &AscentConfig,
) -> Result<CenteredDeviationExperiment> {
    let (t, n) = check_family(population)?;
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    for f in population {
        PlaneSubstochasticForm::new(f.clone())?;
    }
    let real: Vec<RealForm> = population.iter().map(RealForm::from_form).collect();
    let mean = match mean_kind {
        MeanKind::Exact => {
            let refs: Vec<&RealForm> = real.iter().collect();
            RealForm::combine(&refs, &vec![1.0 / real.len() as f64; real.len()])
        }
        MeanKind::Empirical { samples } => {
            if samples == 0 {
                return Err(Error::domain("empirical mean needs at least one sample"));
            }
            let mut rng = rng::substream(rng::derive_seed(seed, u64::MAX), 0);
            let picks: Vec<&RealForm> = (0..samples).map(|_| &real[rng.gen_range(0..real.len())]).collect();
            RealForm::combine(&picks, &vec![1.0 / samples as f64; samples])
        }
    };
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::substream(seed, trial as u64);
            let mut refs: Vec<&RealForm> = (0..k).map(|_| &real[rng.gen_range(0..real.len())]).collect();
            refs.push(&mean);
            let mut coeffs = vec![1.0 / k as f64; k];
            coeffs.push(-1.0);
            let form = RealForm::combine(&refs, &coeffs);
            multilinear_norm(&form, p, &trial_config(config, seed, trial)).map(|e| e.value)
        })
        .collect::<Result<_>>()?;
    Ok(CenteredDeviationExperiment {
        k,
        n,
        t,
        p,
        trials,
        seed,
        mean_kind,
        summary: summarize(&values),
        values,
    })
}
