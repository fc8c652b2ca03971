use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_exponent;
use super::real_form::RealForm;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyadicReport {
    /// Mean over trials of the weighted dyadic sum.
    pub value: f64,
    pub per_trial: Vec<f64>,
    /// Number of dyadic scales, `⌈log₂ n⌉` (at least 1).
    pub scales: u32,
    pub cells: usize,
}

fn scales(n: usize) -> u32 {
    (usize::BITS - (n.max(2) - 1).leading_zeros()).max(1)
}

/// Best `x` in `B̂_d` (entries in `{−1,0,1}`, support `d`) against `g`: signs of
/// the `d` largest `|g_i|`, lowest index first on ties.
fn top_d(g: &[f64], d: usize, order: &mut Vec<usize>, out: &mut [f64]) -> f64 {
    order.clear();
    order.extend(0..g.len());
    order.sort_by(|&a, &b| g[b].abs().total_cmp(&g[a].abs()).then(a.cmp(&b)));
    out.iter_mut().for_each(|x| *x = 0.0);
    let mut value = 0.0;
    for &i in order.iter().take(d) {
        out[i] = if g[i] < 0.0 { -1.0 } else { 1.0 };
        value += g[i].abs();
    }
    value
}

fn local_search(form: &RealForm, dims: &[usize], mut xs: Vec<Vec<f64>>) -> f64 {
    let n = form.n();
    let mut grad = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    let mut next = vec![0.0; n];
    let mut value = {
        let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
        form.evaluate(&v)
    };
    for _ in 0..1000 {
        let before = value;
        for s in 0..form.t() {
            {
                let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
                form.gradient(s, &v, &mut grad);
            }
            value = top_d(&grad, dims[s], &mut order, &mut next);
            xs[s].copy_from_slice(&next);
        }
        if value <= before + 1e-12 * (1.0 + before.abs()) {
            break;
        }
    }
    value
}

/// Heuristic `max A(x[1],…,x[t])` over `x[s] ∈ B̂_{d_s}`: a greedy start built
/// from absolute marginals plus random supports, each improved by block
/// coordinate search.
fn sparse_max(form: &RealForm, dims: &[usize], restarts: usize, seed: u64) -> f64 {
    let (t, n) = (form.t(), form.n());
    let mut marg = vec![vec![0.0; n]; t];
    for (k, v) in form.entries() {
        for (s, &i) in k.iter().enumerate() {
            marg[s][i as usize] += v.abs();
        }
    }
    let mut order = Vec::new();
    let mut greedy = Vec::with_capacity(t);
    for s in 0..t {
        let mut x = vec![0.0; n];
        top_d(&marg[s], dims[s], &mut order, &mut x);
        greedy.push(x);
    }
    let mut best = local_search(form, dims, greedy);
    for r in 0..restarts {
        let mut rng = rng::substream(seed, r as u64);
        let xs: Vec<Vec<f64>> = (0..t)
            .map(|s| {
                let mut x = vec![0.0; n];
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(&mut rng);
                for &i in idx.iter().take(dims[s]) {
                    x[i] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                }
                x
            })
            .collect();
        best = best.max(local_search(form, dims, xs));
    }
    best.max(0.0)
}

/// The weighted dyadic sum `Σ_r 2^t / 2^{(r_1+⋯+r_t)/p} · max_{x ∈ Π B̂_{2^{r_s}}} B(x)`
/// for `B = Σ_i ε_i A_i`.
pub fn dyadic_bound_for_signs(forms: &[RealForm], signs: &[f64], p: f64, restarts: usize, seed: u64) -> Result<f64> {
    check_exponent(p)?;
    let first = forms.first().ok_or_else(|| Error::domain("empty form list"))?;
    let (t, n) = (first.t(), first.n());
    if forms.iter().any(|f| f.t() != t || f.n() != n) {
        return Err(Error::domain("forms must share arity and dimension"));
    }
    if signs.len() != forms.len() {
        return Err(Error::domain("one sign per form is required"));
    }
    let refs: Vec<&RealForm> = forms.iter().collect();
    let b = RealForm::combine(&refs, signs);
    if b.is_zero() {
        return Ok(0.0);
    }
    let r_max = scales(n) as usize;
    let cells = r_max.pow(t as u32);
    let total: f64 = (0..cells)
        .map(|code| {
            let mut c = code;
            let mut rs = Vec::with_capacity(t);
            for _ in 0..t {
                rs.push(c % r_max + 1);
                c /= r_max;
            }
            let dims: Vec<usize> = rs.iter().map(|&r| (1usize << r).min(n)).collect();
            let exponent = if p.is_infinite() { 0.0 } else { rs.iter().sum::<usize>() as f64 / p };
            let weight = 2f64.powi(t as i32) / 2f64.powf(exponent);
            weight * sparse_max(&b, &dims, restarts, rng::derive_seed(seed, code as u64))
        })
        .sum();
    Ok(total)
}

/// Monte Carlo average of [`dyadic_bound_for_signs`] over Rademacher signs.
/// A diagnostic, not a certificate: the inner maxima are heuristic.
pub fn dyadic_upper_bound(forms: &[RealForm], p: f64, trials: usize, seed: u64) -> Result<DyadicReport> {
    let n = forms.first().ok_or_else(|| Error::domain("empty form list"))?.n();
    let t = forms[0].t();
    let per_trial: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::substream(seed, trial as u64);
            let signs: Vec<f64> = forms
                .iter()
                .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            dyadic_bound_for_signs(forms, &signs, p, 4, rng::derive_seed(seed, trial as u64))
        })
        .collect::<Result<_>>()?;
    let value = if trials == 0 { 0.0 } else { per_trial.iter().sum::<f64>() / trials as f64 };
    let r = scales(n);
    Ok(DyadicReport {
        value,
        per_trial,
        scales: r,
        cells: (r as usize).pow(t as u32),
    })
}
