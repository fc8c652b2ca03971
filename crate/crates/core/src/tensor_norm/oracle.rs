use super::ascent::{dual_ball_argmax, lp_norm};
use super::real_form::RealForm;
use super::spectral;
use super::{check_exponent, EstimateKind, NormEstimate};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Largest `n·(t−1)` for which sign vectors are enumerated when `p = ∞`.
    pub max_sign_bits: u32,
    /// Cap on the number of grid tuples visited for `n ≤ 3`; the grid
    /// resolution is the finest one within this cap.
    pub grid_budget: u64,
    pub max_grid_resolution: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_sign_bits: 24,
            grid_budget: 4_000_000,
            max_grid_resolution: 256,
        }
    }
}

fn dual_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Ground-truth `‖A‖_{ℓ_p,…,ℓ_p}` in small regimes:
///
/// * `t = 2, p = 2`: largest singular value (exact);
/// * `p = ∞` with `n·(t−1)` within `max_sign_bits`: sign enumeration over the
///   first `t−1` slots, last slot closed by duality (exact);
/// * `p = 1`: largest absolute entry, attained at signed basis vectors (exact);
/// * `n ≤ 3`: grid search over the first `t−1` slots with a certified lower
///   bound and a Lipschitz upper bound.
pub fn multilinear_norm_oracle(form: &RealForm, p: f64, config: &OracleConfig) -> Result<NormEstimate> {
    check_exponent(p)?;
    let (t, n) = (form.t(), form.n());
    if t == 0 || n == 0 {
        return Err(Error::domain("form must have t ≥ 1 and n ≥ 1"));
    }
    if form.is_zero() {
        return Ok(NormEstimate::zero(t, n));
    }
    if t == 2 && p == 2.0 {
        return Ok(svd_oracle(form));
    }
    if p.is_infinite() && (n * (t - 1)) as u64 <= config.max_sign_bits as u64 {
        return sign_oracle(form);
    }
    if p == 1.0 {
        return Ok(max_entry_oracle(form));
    }
    if n <= 3 {
        return grid_oracle(form, p, config);
    }
    Err(Error::UnsupportedRegime(format!(
        "no exact method for t = {t}, n = {n}, p = {p}"
    )))
}

fn exact(value: f64, witness: Vec<Vec<f64>>, visited: usize) -> NormEstimate {
    NormEstimate {
        value,
        kind: EstimateKind::Exact,
        witness: Some(witness),
        upper: Some(value),
        restarts_used: 0,
        iterations: visited,
        tolerance: 0.0,
    }
}

fn svd_oracle(form: &RealForm) -> NormEstimate {
    let m = spectral::to_matrix(form).expect("arity checked");
    let svd = m.svd(true, true);
    let (best, &sigma) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("nonempty");
    let u = svd.u.as_ref().expect("requested").column(best).iter().copied().collect();
    let v = svd.v_t.as_ref().expect("requested").row(best).iter().copied().collect();
    exact(sigma, vec![u, v], 1)
}

/// Closes the last slot: returns `sup_{‖y‖_p=1} A(xs…, y)` and its maximizer.
fn close_last(form: &RealForm, p: f64, xs: &mut Vec<Vec<f64>>, grad: &mut [f64]) -> f64 {
    let t = form.t();
    xs.push(vec![0.0; form.n()]);
    {
        let views: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
        form.gradient(t - 1, &views, grad);
    }
    let value = lp_norm(grad, dual_exponent(p));
    xs[t - 1] = dual_ball_argmax(grad, p).unwrap_or_else(|_| {
        let mut e = vec![0.0; grad.len()];
        e[0] = 1.0;
        e
    });
    value
}

fn sign_oracle(form: &RealForm) -> Result<NormEstimate> {
    let (t, n) = (form.t(), form.n());
    let bits = n * (t - 1);
    let mut grad = vec![0.0; n];
    let mut best = (-1.0, Vec::new());
    for mask in 0u64..(1u64 << bits) {
        let mut xs: Vec<Vec<f64>> = (0..t - 1)
            .map(|s| {
                (0..n)
                    .map(|i| if mask >> (s * n + i) & 1 == 1 { -1.0 } else { 1.0 })
                    .collect()
            })
            .collect();
        let v = close_last(form, f64::INFINITY, &mut xs, &mut grad);
        if v > best.0 {
            best = (v, xs);
        }
    }
    Ok(exact(best.0, best.1, 1 << bits))
}

fn max_entry_oracle(form: &RealForm) -> NormEstimate {
    let (t, n) = (form.t(), form.n());
    let (idx, v) = form.max_abs_entry().expect("nonzero form");
    let mut witness = vec![vec![0.0; n]; t];
    for (s, &i) in idx.iter().enumerate() {
        witness[s][i as usize] = 1.0;
    }
    if v < 0.0 {
        witness[0][idx[0] as usize] = -1.0;
    }
    exact(v.abs(), witness, 1)
}

/// Normalized points of the boundary of `[-1,1]^n` on a grid of spacing `2/m`.
fn grid_points(n: usize, m: u32, p: f64) -> Vec<Vec<f64>> {
    let side = (m + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut x = Vec::with_capacity(n);
        for _ in 0..n {
            x.push(-1.0 + 2.0 * (c % side) as f64 / m as f64);
            c /= side;
        }
        if x.iter().any(|v| v.abs() == 1.0) {
            let norm = lp_norm(&x, p);
            x.iter_mut().for_each(|v| *v /= norm);
            out.push(x);
        }
    }
    out
}

fn boundary_count(n: usize, m: u32) -> u64 {
    let n = n as u32;
    (m as u64 + 1).pow(n) - (m as u64).saturating_sub(1).pow(n)
}

fn grid_oracle(form: &RealForm, p: f64, config: &OracleConfig) -> Result<NormEstimate> {
    let (t, n) = (form.t(), form.n());
    let slots = (t - 1) as u32;
    // Finest even resolution within budget; even keeps the basis vectors on the grid.
    let mut m = 2u32;
    while m + 2 <= config.max_grid_resolution
        && boundary_count(n, m + 2).checked_pow(slots).is_some_and(|c| c <= config.grid_budget)
    {
        m += 2;
    }
    let needed = boundary_count(n, m).saturating_pow(slots) as u128;
    crate::error::check_budget("grid oracle tuples", needed, config.grid_budget as u128)?;
    let points = grid_points(n, m, p);
    let mut grad = vec![0.0; n];
    let mut best = (-1.0, Vec::new());
    let combos = (points.len() as u64).pow(slots);
    for code in 0..combos {
        let mut c = code;
        let mut xs = Vec::with_capacity(t);
        for _ in 0..slots {
            xs.push(points[(c % points.len() as u64) as usize].clone());
            c /= points.len() as u64;
        }
        let v = close_last(form, p, &mut xs, &mut grad);
        if v > best.0 {
            best = (v, xs);
        }
    }
    // Every unit vector lies within ℓ_p distance δ of a grid point, and the
    // closed-out objective is ‖A‖-Lipschitz in each slot, so
    // ‖A‖ ≤ L + (t−1)·δ·‖A‖.
    let h = 2.0 / m as f64;
    let delta = if p.is_infinite() { h } else { (n as f64).powf(1.0 / p) * h };
    let shrink = 1.0 - (t - 1) as f64 * delta;
    let upper = if shrink > 0.0 { best.0 / shrink } else { f64::INFINITY };
    let views: Vec<&[f64]> = best.1.iter().map(Vec::as_slice).collect();
    let value = form.evaluate(&views);
    Ok(NormEstimate {
        value,
        kind: EstimateKind::CertifiedLowerBound,
        witness: Some(best.1),
        upper: Some(upper.max(value)),
        restarts_used: 0,
        iterations: combos as usize,
        tolerance: upper - value,
    })
}
