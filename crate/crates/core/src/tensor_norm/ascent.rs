use rand::Rng;
use rayon::prelude::*;

use super::real_form::RealForm;
use super::{check_exponent, EstimateKind, NormEstimate, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::rng;

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else {
        let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        scale * x.iter().map(|v| (v.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// The unit vector of `ℓ_p` maximizing `⟨c, x⟩`. Ties go to the lowest index
/// and zero coordinates take sign `+` under `p = ∞`.
pub fn dual_ball_argmax(c: &[f64], p: f64) -> Result<Vec<f64>> {
    check_exponent(p)?;
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Degenerate("cannot maximize against the zero vector".into()));
    }
    let sign = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };
    if p.is_infinite() {
        return Ok(c.iter().map(|&v| sign(v)).collect());
    }
    if p == 1.0 {
        let best = c
            .iter()
            .enumerate()
            .fold(0usize, |b, (i, v)| if v.abs() > c[b].abs() { i } else { b });
        let mut x = vec![0.0; c.len()];
        x[best] = sign(c[best]);
        return Ok(x);
    }
    let mut x: Vec<f64> = c
        .iter()
        .map(|&v| sign(v) * (v.abs() / scale).powf(1.0 / (p - 1.0)))
        .collect();
    let norm = lp_norm(&x, p);
    x.iter_mut().for_each(|v| *v /= norm);
    Ok(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub struct AscentConfig {
    /// Number of random starting points (in addition to the all-ones start
    /// and any caller seeds).
    pub restarts: usize,
    pub tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
    /// Extra starting tuples; rescaled to unit norm, and the first vector is
    /// negated when the form is negative there.
    pub seeds: Vec<Vec<Vec<f64>>>,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            restarts: 20,
            tol: DEFAULT_TOL,
            max_sweeps: 10_000,
            seed: 0,
            seeds: Vec::new(),
        }
    }
}

impl AscentConfig {
    pub fn with_restarts(restarts: usize, seed: u64) -> Self {
        AscentConfig {
            restarts,
            seed,
            ..AscentConfig::default()
        }
    }
}

struct Run {
    value: f64,
    xs: Vec<Vec<f64>>,
    sweeps: usize,
    trace: Vec<f64>,
}

fn normalize(x: &mut [f64], p: f64) -> bool {
    let norm = lp_norm(x, p);
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Cyclic block ascent from `xs`, each block replaced by its dual-ball maximizer.
fn ascend(form: &RealForm, p: f64, mut xs: Vec<Vec<f64>>, tol: f64, max_sweeps: usize, keep_trace: bool) -> Run {
    let t = form.t();
    let mut grad = vec![0.0; form.n()];
    let mut value = {
        let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
        form.evaluate(&v)
    };
    let mut trace = Vec::new();
    if keep_trace {
        trace.push(value);
    }
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let before = value;
        for s in 0..t {
            {
                let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
                form.gradient(s, &v, &mut grad);
            }
            let Ok(next) = dual_ball_argmax(&grad, p) else {
                continue;
            };
            let new_value = dot(&grad, &next);
            debug_assert!(
                new_value >= value - 1e-9 * (1.0 + value.abs()),
                "ascent decreased: {value} -> {new_value}"
            );
            xs[s] = next;
            value = new_value;
            if keep_trace {
                trace.push(value);
            }
        }
        if value - before < tol {
            break;
        }
    }
    let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
    let value = form.evaluate(&v);
    Run {
        value,
        xs,
        sweeps,
        trace,
    }
}

fn starting_points(form: &RealForm, p: f64, config: &AscentConfig) -> Result<Vec<Vec<Vec<f64>>>> {
    let (t, n) = (form.t(), form.n());
    let mut starts = Vec::new();
    let mut ones = vec![vec![1.0; n]; t];
    ones.iter_mut().for_each(|x| {
        normalize(x, p);
    });
    starts.push(ones);
    for seed in &config.seeds {
        if seed.len() != t || seed.iter().any(|x| x.len() != n) {
            return Err(Error::domain(format!("seed tuple must hold {t} vectors of length {n}")));
        }
        let mut xs = seed.clone();
        if !xs.iter_mut().all(|x| normalize(x, p)) {
            continue;
        }
        let v: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
        if form.evaluate(&v) < 0.0 {
            xs[0].iter_mut().for_each(|x| *x = -*x);
        }
        starts.push(xs);
    }
    for r in 0..config.restarts {
        let mut rng = rng::substream(config.seed, r as u64);
        let xs: Vec<Vec<f64>> = (0..t)
            .map(|_| {
                let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if !normalize(&mut x, p) {
                    x = vec![1.0; n];
                    normalize(&mut x, p);
                }
                x
            })
            .collect();
        starts.push(xs);
    }
    Ok(starts)
}

/// Estimates `‖A‖_{ℓ_p,…,ℓ_p}` by alternating ascent from several starts and
/// returns the best value, which is attained at the returned witness.
pub fn multilinear_norm(form: &RealForm, p: f64, config: &AscentConfig) -> Result<NormEstimate> {
    check_exponent(p)?;
    if form.t() == 0 || form.n() == 0 {
        return Err(Error::domain("form must have t ≥ 1 and n ≥ 1"));
    }
    if form.is_zero() {
        return Ok(NormEstimate::zero(form.t(), form.n()));
    }
    let starts = starting_points(form, p, config)?;
    let runs: Vec<Run> = starts
        .into_par_iter()
        .map(|xs| ascend(form, p, xs, config.tol, config.max_sweeps, false))
        .collect();
    let restarts_used = runs.len();
    let iterations = runs.iter().map(|r| r.sweeps).sum();
    // Pure max-reduction in start order; ties keep the earlier start.
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one start");
    Ok(NormEstimate {
        value: best.value.max(0.0),
        kind: EstimateKind::CertifiedLowerBound,
        witness: Some(best.xs),
        upper: None,
        restarts_used,
        iterations,
        tolerance: config.tol,
    })
}

/// Objective after every block update of a single ascent from `start`.
pub fn ascent_trace(form: &RealForm, p: f64, start: Vec<Vec<f64>>, tol: f64) -> Result<Vec<f64>> {
    check_exponent(p)?;
    let mut start = start;
    for x in start.iter_mut() {
        if !normalize(x, p) {
            return Err(Error::Degenerate("zero starting vector".into()));
        }
    }
    Ok(ascend(form, p, start, tol, 10_000, true).trace)
}
