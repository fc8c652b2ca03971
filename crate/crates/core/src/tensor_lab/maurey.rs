use rand::Rng;
use serde::{Deserialize, Serialize};

use super::substochastic::PlaneSubstochasticForm;
use crate::error::{Error, Result};
use crate::hypergraph::MultilinearForm;
use crate::rational::{self, Rational};
use crate::rng;
use crate::stats::summarize;
use crate::tensor_norm::RealForm;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsifiedForm {
    /// `A_i(x)`, exact.
    #[serde(with = "rational::serde_str")]
    pub exact: Rational,
    pub mean: f64,
    pub variance: f64,
    pub std_err: f64,
    /// `|mean − A_i(x)| ≤ 3·std_err`.
    pub unbiased: bool,
    /// `variance ≤ 2^t η^t min(d)`.
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaureyReport {
    pub t: usize,
    pub n: usize,
    pub eta: f64,
    pub samples: usize,
    pub seed: u64,
    pub support: Vec<usize>,
    /// Samples per slot, `⌈d_s/η⌉`.
    pub draws: Vec<usize>,
    pub variance_bound: f64,
    pub forms: Vec<SparsifiedForm>,
    /// `ln Π_s C(n, c_s)·c_s^{c_s}`, the size of the sparse tuple space.
    pub net_log_count: f64,
    /// `(2t·max(d)/η)·ln n`.
    pub net_log_bound: f64,
    /// The first few sparsified tuples.
    pub examples: Vec<Vec<Vec<f64>>>,
}

impl MaureyReport {
    pub fn pass(&self) -> bool {
        self.forms.iter().all(|f| f.unbiased && f.within_bound)
    }
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `(ln Π_s C(n, c_s)·c_s^{c_s}, (2t·max(d)/η)·ln n)`.
pub fn net_size_log(n: usize, draws: &[usize], support: &[usize], eta: f64) -> (f64, f64) {
    let count = draws
        .iter()
        .map(|&c| ln_binomial(n, c.min(n)) + c as f64 * (c as f64).ln())
        .sum();
    let max_d = support.iter().copied().max().unwrap_or(0) as f64;
    (count, 2.0 * draws.len() as f64 * max_d / eta * (n as f64).ln())
}

/// Replaces each `x[s] ∈ {−1,0,1}^n` with `(d_s/c_s) Σ_{l ≤ c_s} x[s]_{j_l} e_{j_l}`
/// for `j_l` uniform on the support, repeated `samples` times, and reports
/// the empirical mean and variance of every `A_i(x̃)`.
pub fn maurey_sparsify(
    x: &[Vec<i8>],
    eta: f64,
    forms: &[MultilinearForm],
    samples: usize,
    seed: u64,
) -> Result<MaureyReport> {
    if eta.is_nan() || eta < 1.0 {
        return Err(Error::precondition(format!("η = {eta} must be at least 1")));
    }
    let t = x.len();
    let n = x.first().map_or(0, Vec::len);
    if t == 0 || n == 0 || x.iter().any(|v| v.len() != n) {
        return Err(Error::domain("x must be t nonempty vectors of a common length"));
    }
    let mut supports = Vec::with_capacity(t);
    for (s, v) in x.iter().enumerate() {
        if v.iter().any(|&c| !(-1..=1).contains(&c)) {
            return Err(Error::precondition(format!("x[{s}] has entries outside {{−1, 0, 1}}")));
        }
        let supp: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if supp.is_empty() {
            return Err(Error::precondition(format!("x[{s}] is zero")));
        }
        supports.push(supp);
    }
    for f in forms {
        if f.t() != t || f.n() != n {
            return Err(Error::domain("forms must match the tuple shape"));
        }
        PlaneSubstochasticForm::new(f.clone())?;
    }
    let support: Vec<usize> = supports.iter().map(Vec::len).collect();
    let draws: Vec<usize> = support.iter().map(|&d| ((d as f64 / eta).ceil() as usize).max(1)).collect();
    let min_d = *support.iter().min().expect("t ≥ 1");

    let exact_x: Vec<Vec<Rational>> = x
        .iter()
        .map(|v| v.iter().map(|&c| Rational::from_integer(c as i128)).collect())
        .collect();
    let mut exacts = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let value = f.evaluate(&exact_x)?;
        if rational::abs(&value) > Rational::from_integer(min_d as i128) {
            return Err(Error::Invariant(format!(
                "|A_{i}(x)| = {} exceeds min(d) = {min_d}",
                rational::format(&value)
            )));
        }
        exacts.push(value);
    }

    let real: Vec<RealForm> = forms.iter().map(RealForm::from_form).collect();
    let mut rng = rng::substream(seed, 0);
    let mut per_form = vec![Vec::with_capacity(samples); forms.len()];
    let mut examples = Vec::new();
    let mut xt = vec![vec![0.0; n]; t];
    for sample in 0..samples {
        for s in 0..t {
            xt[s].iter_mut().for_each(|v| *v = 0.0);
            let w = support[s] as f64 / draws[s] as f64;
            for _ in 0..draws[s] {
                let j = supports[s][rng.gen_range(0..support[s])];
                xt[s][j] += w * x[s][j] as f64;
            }
        }
        if sample < 3 {
            examples.push(xt.clone());
        }
        let views: Vec<&[f64]> = xt.iter().map(Vec::as_slice).collect();
        for (vals, f) in per_form.iter_mut().zip(&real) {
            vals.push(f.evaluate(&views));
        }
    }

    let variance_bound = 2f64.powi(t as i32) * eta.powi(t as i32) * min_d as f64;
    let forms_out = per_form
        .iter()
        .zip(&exacts)
        .map(|(vals, exact)| {
            let s = summarize(vals);
            let var = s.std * s.std;
            let target = rational::to_f64(exact);
            SparsifiedForm {
                exact: *exact,
                mean: s.mean,
                variance: var,
                std_err: s.se,
                unbiased: (s.mean - target).abs() <= 3.0 * s.se + 1e-12 * (1.0 + target.abs()),
                within_bound: var <= variance_bound,
            }
        })
        .collect();
    let (net_log_count, net_log_bound) = net_size_log(n, &draws, &support, eta);
    Ok(MaureyReport {
        t,
        n,
        eta,
        samples,
        seed,
        support,
        draws,
        variance_bound,
        forms: forms_out,
        net_log_count,
        net_log_bound,
        examples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_group::FiniteGroup;
    use crate::tensor_lab::cayley_slice;

    fn slices() -> Vec<MultilinearForm> {
        let g = FiniteGroup::cyclic(8).unwrap();
        (0..3).map(|v| cayley_slice(&g, &[1, 1, 1], &[0, v, 2 * v % 8]).unwrap()).collect()
    }

    fn tuple() -> Vec<Vec<i8>> {
        vec![
            vec![1, -1, 0, 1, 0, 0, 1, 0],
            vec![0, 1, 1, 0, -1, 1, 0, 0],
            vec![1, 1, 1, 1, 0, 0, 0, 0],
        ]
    }

    #[test]
    fn no_compression_keeps_support() {
        let r = maurey_sparsify(&tuple(), 1.0, &slices(), 200, 1).unwrap();
        assert_eq!(r.draws, vec![4, 4, 4]);
        for ex in &r.examples {
            for (s, v) in ex.iter().enumerate() {
                for (j, &c) in v.iter().enumerate() {
                    if tuple()[s][j] == 0 {
                        assert_eq!(c, 0.0);
                    }
                }
            }
        }
        assert!(r.pass());
    }

    #[test]
    fn compressed_samples_are_unbiased() {
        let r = maurey_sparsify(&tuple(), 2.0, &slices(), 10_000, 7).unwrap();
        assert_eq!(r.draws, vec![2, 2, 2]);
        assert!(r.pass(), "{:?}", r.forms);
        assert!(r.net_log_count <= r.net_log_bound);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(maurey_sparsify(&tuple(), 0.5, &slices(), 10, 0), Err(Error::Precondition(_))));
        let mut bad = tuple();
        bad[0][0] = 2;
        assert!(maurey_sparsify(&bad, 1.0, &slices(), 10, 0).is_err());
    }
}
