//! The `t = 2` special case, where the `ℓ_2` norm is the largest singular value.

use nalgebra::{DMatrix, DVector};

use super::real_form::RealForm;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational;

/// Dense matrix of a bilinear form.
pub fn to_matrix(form: &RealForm) -> Result<DMatrix<f64>> {
    if form.t() != 2 {
        return Err(Error::domain(format!("expected a bilinear form, got arity {}", form.t())));
    }
    let n = form.n();
    let mut m = DMatrix::zeros(n, n);
    for (k, v) in form.entries() {
        m[(k[0] as usize, k[1] as usize)] += v;
    }
    Ok(m)
}

pub fn from_matrix(m: &DMatrix<f64>) -> RealForm {
    let mut f = RealForm::new(2, m.nrows());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            f.push(&[i as u32, j as u32], m[(i, j)]);
        }
    }
    f
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Power iteration on `MᵀM`; a lower estimate of the spectral norm that
/// converges to it from below.
pub fn power_iteration_norm(m: &DMatrix<f64>, tol: f64, max_iter: usize) -> f64 {
    let n = m.ncols();
    if n == 0 {
        return 0.0;
    }
    // Deterministic start with no special alignment to common eigenvectors.
    let mut v = DVector::from_fn(n, |i, _| 1.0 + (i as f64 * 0.618_033_988_75).fract());
    v /= v.norm();
    let mut est = 0.0;
    for _ in 0..max_iter {
        let w = m * &v;
        let next = m.transpose() * &w;
        let norm = next.norm();
        let sigma = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v = next / norm;
        if (sigma - est).abs() <= tol * sigma.max(1.0) {
            return sigma;
        }
        est = sigma;
    }
    est
}

/// `λ(G) = ‖A_G − J/n‖_{S_∞}` for a regular graph, via the symmetric
/// eigendecomposition when `A_G` is symmetric and the SVD otherwise.
pub fn graph_lambda(graph: &Hypergraph) -> Result<f64> {
    if graph.t() != 2 {
        return Err(Error::domain("graph_lambda needs a 2-uniform hypergraph"));
    }
    let form = graph.adjacency_form(true)?;
    let n = graph.vertex_count();
    let mut m = DMatrix::from_element(n, n, -1.0 / n as f64);
    for (k, v) in form.entries() {
        m[(k[0] as usize, k[1] as usize)] += rational::to_f64(v);
    }
    if form.is_symmetric() {
        let eig = m.symmetric_eigenvalues();
        Ok(eig.iter().fold(0.0f64, |a, e| a.max(e.abs())))
    } else {
        Ok(spectral_norm(&m))
    }
}
