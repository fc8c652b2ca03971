use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::deviation::MeanKind;
use crate::error::{Error, Result};
use crate::field_group::FiniteGroup;
use crate::hypergraph::cayley_graph;
use crate::rational;
use crate::rng;
use crate::stats::{summarize, Summary};
use crate::tensor_norm::spectral::{power_iteration_norm, spectral_norm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFrequency {
    pub eps: f64,
    /// Fraction of trials with deviation above `eps`.
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDeviationExperiment {
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_kind: MeanKind,
    /// Exact `‖(1/k) Σ (A_i − E[A])‖_{S_∞}` per trial.
    pub values: Vec<f64>,
    pub summary: Summary,
    pub tails: Vec<TailFrequency>,
}

/// The normalized adjacency matrix of `cay(Γ, {g})`.
pub fn graph_slice_matrix(group: &FiniteGroup, g: usize) -> Result<DMatrix<f64>> {
    let form = cayley_graph(group, &[g])?.adjacency_form(true)?;
    let n = group.order();
    let mut m = DMatrix::zeros(n, n);
    for (k, v) in form.entries() {
        m[(k[0] as usize, k[1] as usize)] = rational::to_f64(v);
    }
    Ok(m)
}

/// Draws `k` matrices uniformly with replacement from `population` per trial
/// and records the exact spectral norm of the centered average.
pub fn matrix_deviation(
    population: &[DMatrix<f64>],
    k: usize,
    trials: usize,
    seed: u64,
    eps_levels: &[f64],
) -> Result<MatrixDeviationExperiment> {
    let n = population.first().ok_or_else(|| Error::domain("empty matrix population"))?.nrows();
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    for (i, m) in population.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::domain(format!("matrix {i} is not {n}×{n}")));
        }
        let norm = power_iteration_norm(m, 1e-12, 100_000);
        if norm > 1.0 + 1e-8 {
            return Err(Error::precondition(format!("matrix {i} has spectral norm {norm} > 1")));
        }
    }
    let mean = population.iter().fold(DMatrix::zeros(n, n), |acc, m| acc + m) / population.len() as f64;
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::substream(seed, trial as u64);
            let mut sum = DMatrix::zeros(n, n);
            for _ in 0..k {
                sum += &population[rng.gen_range(0..population.len())];
            }
            spectral_norm(&(sum / k as f64 - &mean))
        })
        .collect();
    let tails = eps_levels
        .iter()
        .map(|&eps| TailFrequency {
            eps,
            frequency: values.iter().filter(|&&v| v > eps).count() as f64 / trials.max(1) as f64,
        })
        .collect();
    Ok(MatrixDeviationExperiment {
        k,
        n,
        trials,
        seed,
        mean_kind: MeanKind::Exact,
        summary: summarize(&values),
        values,
        tails,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_population_has_no_deviation() {
        let j = DMatrix::from_element(5, 5, 0.2);
        let e = matrix_deviation(&[j.clone(), j], 3, 10, 1, &[0.1]).unwrap();
        assert!(e.values.iter().all(|&v| v < 1e-14));
        assert_eq!(e.tails[0].frequency, 0.0);
    }

    #[test]
    fn single_draw_is_distance_to_mean() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let pop: Vec<DMatrix<f64>> = (0..9).map(|v| graph_slice_matrix(&g, v).unwrap()).collect();
        let mean = DMatrix::from_element(9, 9, 1.0 / 9.0);
        let allowed: Vec<f64> = pop.iter().map(|m| spectral_norm(&(m - &mean))).collect();
        let e = matrix_deviation(&pop, 1, 20, 3, &[]).unwrap();
        for v in e.values {
            assert!(allowed.iter().any(|a| (a - v).abs() < 1e-12));
        }
    }

    #[test]
    fn large_norms_are_rejected() {
        let m = DMatrix::from_element(2, 2, 1.0);
        assert!(matches!(matrix_deviation(&[m], 1, 1, 0, &[]), Err(Error::Precondition(_))));
    }
}
