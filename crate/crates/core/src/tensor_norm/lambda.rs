use super::ascent::{multilinear_norm, AscentConfig};
use super::real_form::RealForm;
use super::NormEstimate;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// The indicator tuple `(1_{T_1},…,1_{T_t})` as a starting point.
pub fn indicator_seed(sets: &[Vec<bool>]) -> Vec<Vec<f64>> {
    sets.iter()
        .map(|s| s.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Estimates `λ_K(H) = ‖A_H − A_K‖_{ℓ_t,…,ℓ_t}`.
///
/// Every tuple in `test_sets` is added as a starting point, so the estimate
/// is at least `|A_H − A_K|(1_{T_1},…,1_{T_t}) / (|T_1|⋯|T_t|)^{1/t}` for each.
pub fn lambda_k(h: &Hypergraph, k: &Hypergraph, config: &AscentConfig, test_sets: &[Vec<Vec<bool>>]) -> Result<NormEstimate> {
    if h.t() != k.t() || h.vertex_count() != k.vertex_count() {
        return Err(Error::domain(format!(
            "H is {}-uniform on {} vertices but K is {}-uniform on {}",
            h.t(),
            h.vertex_count(),
            k.t(),
            k.vertex_count()
        )));
    }
    let (t, n) = (h.t(), h.vertex_count());
    let diff = h.adjacency_form(true)?.sub(&k.adjacency_form(true)?)?;
    let form = RealForm::from_form(&diff);
    if diff.is_zero() {
        return Ok(NormEstimate::zero(t, n));
    }
    let mut config = config.clone();
    for sets in test_sets {
        if sets.len() != t || sets.iter().any(|s| s.len() != n) {
            return Err(Error::domain(format!("test tuple must hold {t} subsets of {n} vertices")));
        }
        config.seeds.push(indicator_seed(sets));
    }
    multilinear_norm(&form, t as f64, &config)
}
