use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Outcome, Verdict};
use crate::error::{check_budget, Error, Result, DEFAULT_BUDGET};
use crate::field_group::{FiniteGroup, FpVec};
use crate::hypergraph::{cayley_form_on_indicators, cayley_graph, cayley_hypergraph, coset_representatives, EquationSystem};
use crate::poly_method::{count_lines, densecap_construct, ldlines_identity_check, DensecapOptions, Rectangle};
use crate::rational::{self, Rational};
use crate::rng;
use crate::stats::summarize;
use crate::tensor_lab::{cayley_slice, maurey_sparsify, rademacher_deviation};
use crate::tensor_norm::spectral::graph_lambda;
use crate::tensor_norm::{exponent_serde, lambda_k, AscentConfig, DEFAULT_TOL};

/// Largest group handled by the dense eigensolver.
pub const EIGEN_BUDGET: usize = 4096;

fn default_restarts() -> usize {
    10
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET as u64
}

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    spec.parse()
}

fn ascent(restarts: usize, tol: f64, seed: u64) -> AscentConfig {
    AscentConfig {
        restarts,
        tol,
        seed,
        ..AscentConfig::default()
    }
}

fn representatives(group: &FiniteGroup, system: &EquationSystem) -> Result<Vec<Vec<usize>>> {
    system.require_translation_invariant()?;
    coset_representatives(system, group, DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArGraphParams {
    pub group: String,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// Use every element once instead of sampling `k` generators.
    #[serde(default)]
    pub all_elements: bool,
}

/// `λ(cay(Γ, S))` for `k` uniform generators per trial, computed exactly.
pub(crate) fn ar_graph_trial(params: &ArGraphParams) -> Result<Outcome> {
    let group = parse_group(&params.group)?;
    let m = group.order();
    check_budget("eigensolver vertices", m as u128, EIGEN_BUDGET as u128)?;
    if !params.all_elements && params.k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let trials = if params.all_elements { 1 } else { params.trials };
    let lambdas: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let gens: Vec<usize> = if params.all_elements {
                (0..m).collect()
            } else {
                let mut rng = rng::substream(params.seed, trial as u64);
                (0..params.k).map(|_| rng.gen_range(0..m)).collect()
            };
            graph_lambda(&cayley_graph(&group, &gens)?)
        })
        .collect::<Result<_>>()?;
    let summary = summarize(&lambdas);
    let mut verdicts = Vec::new();
    if params.all_elements {
        verdicts.push(Verdict::new(
            "complete_graph_lambda_zero",
            lambdas[0] < 1e-9,
            format!("λ = {:e}", lambdas[0]),
        ));
    } else if let Some((2, n)) = group.as_vector_space() {
        if params.k < n as usize {
            let worst = lambdas.iter().fold(0.0f64, |a, l| a.max((l - 1.0).abs()));
            verdicts.push(Verdict::new(
                "binary_obstruction",
                worst <= 1e-9,
                format!("max |λ − 1| = {worst:e} with k = {} < n = {n}", params.k),
            ));
        }
    }
    Ok(Outcome {
        payload: json!({
            "group_order": m,
            "k": if params.all_elements { m } else { params.k },
            "lambdas": lambdas,
            "summary": summary,
        }),
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArHyperParams {
    pub group: String,
    pub system: EquationSystem,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Use `S′ = S` instead of sampling.
    #[serde(default)]
    pub all_generators: bool,
}

/// `λ_K(cay^{(t)}(Γ, q, S′))` for `S′` drawn with replacement from the coset
/// representatives `S` of `sol(C)`, against `K = cay^{(t)}(Γ, q, S)`.
pub(crate) fn ar_hypergraph_trial(params: &ArHyperParams) -> Result<Outcome> {
    let group = parse_group(&params.group)?;
    let reps = representatives(&group, &params.system)?;
    let q = &params.system.q;
    let k_graph = cayley_hypergraph(&group, q, &reps)?;
    if !params.all_generators && params.k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let trials = if params.all_generators { 1 } else { params.trials };
    let lambdas: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let sub: Vec<Vec<usize>> = if params.all_generators {
                reps.clone()
            } else {
                let mut rng = rng::substream(params.seed, trial as u64);
                (0..params.k).map(|_| reps[rng.gen_range(0..reps.len())].clone()).collect()
            };
            let h = cayley_hypergraph(&group, q, &sub)?;
            let cfg = ascent(params.restarts, params.tol, rng::derive_seed(params.seed, trial as u64));
            lambda_k(&h, &k_graph, &cfg, &[]).map(|e| e.value)
        })
        .collect::<Result<_>>()?;
    let mut verdicts = Vec::new();
    if params.all_generators {
        verdicts.push(Verdict::new("full_set_lambda_zero", lambdas[0] == 0.0, format!("λ_K = {}", lambdas[0])));
    }
    Ok(Outcome {
        payload: json!({
            "group_order": group.order(),
            "t": params.system.t(),
            "generator_count": reps.len(),
            "k": if params.all_generators { reps.len() } else { params.k },
            "lambdas": lambdas,
            "summary": summarize(&lambdas),
        }),
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingParams {
    pub group: String,
    pub system: EquationSystem,
    /// Size of the sub-multiset of representatives generating `H`; `None`
    /// takes all of them (`H = K`).
    pub k: Option<usize>,
    pub tests: usize,
    pub density: f64,
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

/// Checks `|A_H − A_K|(1_{T_1},…,1_{T_t}) ≤ λ·(|T_1|⋯|T_t|)^{1/t}` on random
/// subsets and on the full vertex set, with `λ` estimated from seeds that
/// include every tested tuple.
pub(crate) fn mixing_check(params: &MixingParams) -> Result<Outcome> {
    if !(0.0..=1.0).contains(&params.density) {
        return Err(Error::domain("density must lie in [0, 1]"));
    }
    let group = parse_group(&params.group)?;
    let reps = representatives(&group, &params.system)?;
    let q = &params.system.q;
    let t = q.len();
    let m = group.order();
    let sub: Vec<Vec<usize>> = match params.k {
        None => reps.clone(),
        Some(0) => return Err(Error::domain("k must be positive")),
        Some(k) => {
            let mut rng = rng::substream(rng::derive_seed(params.seed, 1), 0);
            (0..k).map(|_| reps[rng.gen_range(0..reps.len())].clone()).collect()
        }
    };
    let h = cayley_hypergraph(&group, q, &sub)?;
    let k_graph = cayley_hypergraph(&group, q, &reps)?;
    let mut tuples: Vec<Vec<Vec<bool>>> = vec![vec![vec![true; m]; t]];
    for i in 0..params.tests {
        let mut rng = rng::substream(rng::derive_seed(params.seed, 2), i as u64);
        tuples.push((0..t).map(|_| (0..m).map(|_| rng.gen_bool(params.density)).collect()).collect());
    }
    let cfg = ascent(params.restarts, params.tol, params.seed);
    let lambda = lambda_k(&h, &k_graph, &cfg, &tuples)?.value;
    let checks: Vec<serde_json::Value> = tuples
        .par_iter()
        .map(|sets| {
            let views: Vec<&[bool]> = sets.iter().map(Vec::as_slice).collect();
            let lhs = rational::abs(
                &(cayley_form_on_indicators(&group, q, &sub, &views)?
                    - cayley_form_on_indicators(&group, q, &reps, &views)?),
            );
            let sizes: Vec<usize> = sets.iter().map(|s| s.iter().filter(|&&b| b).count()).collect();
            let scale = sizes.iter().map(|&s| s as f64).product::<f64>().powf(1.0 / t as f64);
            let rhs = lambda * scale;
            let lhs_f = rational::to_f64(&lhs);
            let pass = lhs_f <= rhs + 1e-12 * (1.0 + rhs);
            Ok(json!({
                "sizes": sizes,
                "lhs": rational::format(&lhs),
                "lhs_value": lhs_f,
                "rhs": rhs,
                "margin": rhs - lhs_f,
                "pass": pass,
            }))
        })
        .collect::<Result<_>>()?;
    let failures = checks.iter().filter(|c| c["pass"] == false).count();
    Ok(Outcome {
        payload: json!({
            "lambda_estimate": lambda,
            "h_generators": sub.len(),
            "k_generators": reps.len(),
            "checks": checks,
        }),
        verdicts: vec![Verdict::new(
            "mixing_inequality",
            failures == 0,
            format!("{failures} of {} tuples violate the bound", checks.len()),
        )],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubsetSpec {
    All,
    Indices { indices: Vec<usize> },
    Random { k: usize },
    /// Progressions `(0, d, 2d, …)` for directions `d` of a vector group.
    Directions { directions: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArithExpParams {
    pub group: String,
    pub system: EquationSystem,
    pub subset: SubsetSpec,
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Seed the estimate with the dense rectangle built from the directions
    /// and report its normalized value as a lower bound.
    #[serde(default)]
    pub densecap_witness: bool,
}

fn progression_system(system: &EquationSystem) -> bool {
    system.rows == crate::hypergraph::ap_matrix(system.t()) && system.q.iter().all(|&q| q == 1)
}

/// Estimates `ε` with `λ_K(cay^{(t)}(Γ, q, S′)) ≤ ε`, `K` built from all
/// coset representatives of `sol(C)`.
pub(crate) fn arithmetic_expander_check(params: &ArithExpParams) -> Result<Outcome> {
    let group = parse_group(&params.group)?;
    params.system.require_translation_invariant()?;
    let q = &params.system.q;
    let t = q.len();
    crate::hypergraph::check_order_condition(&group, q)?;
    let reps = representatives(&group, &params.system)?;
    let mut directions = Vec::new();
    let sub: Vec<Vec<usize>> = match &params.subset {
        SubsetSpec::All => reps.clone(),
        SubsetSpec::Indices { indices } => indices
            .iter()
            .map(|&i| {
                reps.get(i)
                    .cloned()
                    .ok_or_else(|| Error::domain(format!("representative index {i} out of range")))
            })
            .collect::<Result<_>>()?,
        SubsetSpec::Random { k } => {
            let mut rng = rng::substream(rng::derive_seed(params.seed, 1), 0);
            (0..*k).map(|_| reps[rng.gen_range(0..reps.len())].clone()).collect()
        }
        SubsetSpec::Directions { directions: raw } => {
            let (p, n) = group
                .as_vector_space()
                .ok_or_else(|| Error::domain("directions need a vector group vec:p^n"))?;
            if !progression_system(&params.system) {
                return Err(Error::domain("directions describe progressions; the system must be the progression system with q = 1"));
            }
            for d in raw {
                if d.len() != n as usize {
                    return Err(Error::domain(format!("direction {d:?} is not in F_{p}^{n}")));
                }
                directions.push(FpVec::from_ints(p, d)?);
            }
            directions.iter().map(|d| reps[d.index()].clone()).collect()
        }
    };
    if sub.is_empty() {
        return Err(Error::domain("S′ is empty"));
    }
    let h = cayley_hypergraph(&group, q, &sub)?;
    let k_graph = cayley_hypergraph(&group, q, &reps)?;

    let mut seeds = Vec::new();
    let mut rectangle = None;
    if params.densecap_witness {
        let (p, n) = group
            .as_vector_space()
            .filter(|_| matches!(params.subset, SubsetSpec::Directions { .. }))
            .ok_or_else(|| Error::domain("the dense rectangle witness needs direction subsets"))?;
        if t != p as usize {
            return Err(Error::domain(format!("the rectangle has p = {p} factors but t = {t}")));
        }
        let built = densecap_construct(p, n as usize, &directions, &DensecapOptions::default())?;
        let b1: Vec<bool> = built.t1.iter().by_vals().collect();
        let b2: Vec<bool> = built.t2.iter().by_vals().collect();
        let mut sets = vec![b1];
        sets.extend(std::iter::repeat(b2).take(t - 1));
        let views: Vec<&[bool]> = sets.iter().map(Vec::as_slice).collect();
        let diff = rational::abs(
            &(cayley_form_on_indicators(&group, q, &sub, &views)? - cayley_form_on_indicators(&group, q, &reps, &views)?),
        );
        let (s1, s2) = (built.t1_size() as f64, built.t2_size() as f64);
        let value = rational::to_f64(&diff) / (s1 * s2.powi(t as i32 - 1)).powf(1.0 / t as f64);
        rectangle = Some(json!({
            "t1_size": built.t1_size(),
            "t2_size": built.t2_size(),
            "lhs": rational::format(&diff),
            "value": value,
            "floor": (p as f64).powi(-((p * p - p) as i32)),
        }));
        seeds.push(sets);
    }
    let estimate = lambda_k(&h, &k_graph, &ascent(params.restarts, params.tol, params.seed), &seeds)?;
    let mut verdicts = Vec::new();
    if matches!(params.subset, SubsetSpec::All) {
        verdicts.push(Verdict::new("full_set_is_exact", estimate.value == 0.0, format!("ε = {}", estimate.value)));
    }
    if let Some(r) = &rectangle {
        let value = r["value"].as_f64().unwrap();
        let floor = r["floor"].as_f64().unwrap();
        verdicts.push(Verdict::new(
            "rectangle_lower_bound",
            estimate.value >= value - 1e-12 && value >= floor,
            format!("ε = {} ≥ rectangle {value} ≥ {floor}", estimate.value),
        ));
    }
    Ok(Outcome {
        payload: json!({
            "generator_count": reps.len(),
            "subset_size": sub.len(),
            "epsilon": estimate.value,
            "kind": estimate.kind,
            "witness": estimate.witness,
            "rectangle": rectangle,
        }),
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectionSpec {
    /// `count` distinct uniform directions.
    Random { count: usize },
    Explicit { directions: Vec<Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensecapParams {
    pub p: u32,
    pub n: usize,
    pub directions: DirectionSpec,
    pub seed: u64,
    #[serde(default)]
    pub strict_n: bool,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

/// Pairs up to which the all-direction identity is also checked independently.
const FULL_IDENTITY_PAIRS: u128 = 10_000_000;

pub(crate) fn densecap_run(params: &DensecapParams) -> Result<Outcome> {
    let (p, n) = (params.p, params.n);
    let size = crate::error::sat_pow(p as u128, n as u32);
    check_budget("enumeration of F_p^n", size, params.budget as u128)?;
    let dirs: Vec<FpVec> = match &params.directions {
        DirectionSpec::Random { count } => {
            if *count as u128 > size {
                return Err(Error::domain(format!("cannot draw {count} distinct directions from {size}")));
            }
            let mut rng = rng::substream(params.seed, 0);
            let mut idx = sample(&mut rng, size as usize, *count).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| FpVec::from_index(p, n, i)).collect()
        }
        DirectionSpec::Explicit { directions } => directions
            .iter()
            .map(|d| {
                if d.len() != n {
                    return Err(Error::domain(format!("direction {d:?} is not in F_{p}^{n}")));
                }
                FpVec::from_ints(p, d)
            })
            .collect::<Result<_>>()?,
    };
    let options = DensecapOptions {
        strict_n: params.strict_n,
        budget: params.budget as u128,
    };
    let r = densecap_construct(p, n, &dirs, &options)?;

    let mut verdicts = vec![
        Verdict::new(
            "no_direction_lines",
            r.violations.is_empty(),
            format!("{} contained lines with direction in D", r.violations.len()),
        ),
        Verdict::new(
            "line_count_bound",
            r.count_ok(),
            format!("{} lines ≥ {}", r.line_count, r.bound),
        ),
        Verdict::new("zero_line_witness", r.witness_ok, "ℓ_{0,y} for the first y ∈ T_2"),
    ];
    let prop32_d = if dirs.is_empty() {
        None
    } else {
        let c = ldlines_identity_check(p, n, &r.t1, &r.t2, &dirs, options.budget)?;
        verdicts.push(Verdict::new(
            "line_identity_d",
            c.pass,
            format!("{} = {}", rational::format(&c.lhs), rational::format(&c.rhs)),
        ));
        Some(c)
    };
    // A_{L_{F^n}}(1_{T_1}, 1_{T_2}, …) = line_count / p^n.
    let full_value = Rational::new(r.line_count as i128, size as i128);
    let prop32_full = if size * size <= FULL_IDENTITY_PAIRS {
        let all: Vec<FpVec> = (0..size as usize).map(|i| FpVec::from_index(p, n, i)).collect();
        let c = ldlines_identity_check(p, n, &r.t1, &r.t2, &all, options.budget)?;
        let rect = Rectangle::line_shape(p, n, r.t1.clone(), r.t2.clone())?;
        let consistent = c.pass && c.rhs == full_value && count_lines(&rect, &all, options.budget)? == r.line_count;
        verdicts.push(Verdict::new(
            "line_identity_all",
            consistent,
            format!("{} = {}", rational::format(&c.lhs), rational::format(&full_value)),
        ));
        Some(c)
    } else {
        None
    };
    let (s1, s2) = (r.t1_size() as f64, r.t2_size() as f64);
    let pf = p as f64;
    let ratio = rational::to_f64(&full_value) / (s1.powf(1.0 / pf) * s2.powf((pf - 1.0) / pf));
    let floor = pf.powi(-((p * p - p) as i32));
    verdicts.push(Verdict::new(
        "rectangle_witness",
        ratio >= floor,
        format!("{ratio} ≥ p^-(p²−p) = {floor}"),
    ));
    Ok(Outcome {
        payload: json!({
            "p": p,
            "n": n,
            "directions": dirs.iter().map(|d| d.coords().to_vec()).collect::<Vec<_>>(),
            "polynomial": r.polynomial.to_string(),
            "terms": r.polynomial.terms().map(|(e, c)| (e.to_vec(), c)).collect::<Vec<_>>(),
            "level": r.level,
            "t1_size": r.t1_size(),
            "t2_size": r.t2_size(),
            "line_count": r.line_count,
            "bound": r.bound,
            "violations": r.violations.len(),
            "violation_examples": r.violations.iter().take(5)
                .map(|(x, d)| (x.coords().to_vec(), d.coords().to_vec())).collect::<Vec<_>>(),
            "witness_ok": r.witness_ok,
            "line_identity_d": prop32_d,
            "line_identity_all": prop32_full,
            "all_lines_value": rational::format(&full_value),
            "witness_ratio": ratio,
            "witness_floor": floor,
        }),
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationParams {
    pub group: String,
    pub q: Vec<i64>,
    pub k: usize,
    #[serde(with = "exponent_serde")]
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

/// The first `k` slices `A_g` of a family drawn from `seed`; nested in `k`.
pub fn slice_family(group: &FiniteGroup, q: &[i64], k: usize, seed: u64) -> Result<Vec<crate::hypergraph::MultilinearForm>> {
    let mut rng = rng::substream(rng::derive_seed(seed, 1), 0);
    let m = group.order();
    (0..k)
        .map(|_| {
            let g: Vec<usize> = q.iter().map(|_| rng.gen_range(0..m)).collect();
            cayley_slice(group, q, &g)
        })
        .collect()
}

pub(crate) fn deviation_run(params: &DeviationParams) -> Result<Outcome> {
    let group = parse_group(&params.group)?;
    if params.k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let forms = slice_family(&group, &params.q, params.k, params.seed)?;
    let exp = rademacher_deviation(&forms, params.p, params.trials, params.seed, &ascent(params.restarts, params.tol, 0))?;
    Ok(Outcome {
        payload: serde_json::to_value(&exp)?,
        verdicts: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsifyParams {
    pub n: usize,
    pub t: usize,
    pub support: Vec<usize>,
    pub eta: f64,
    pub samples: usize,
    pub forms: usize,
    pub seed: u64,
}

/// Sparsifies a random `{−1,0,1}` tuple with the given supports against
/// Cayley slices over `cyclic:n`.
pub(crate) fn sparsify_run(params: &SparsifyParams) -> Result<Outcome> {
    if params.support.len() != params.t {
        return Err(Error::domain("one support size per slot is required"));
    }
    if params.support.iter().any(|&d| d == 0 || d > params.n) {
        return Err(Error::domain("support sizes must lie in [1, n]"));
    }
    let group = FiniteGroup::cyclic(params.n)?;
    let forms = slice_family(&group, &vec![1; params.t], params.forms, params.seed)?;
    let mut rng = rng::substream(rng::derive_seed(params.seed, 2), 0);
    let x: Vec<Vec<i8>> = params
        .support
        .iter()
        .map(|&d| {
            let mut v = vec![0i8; params.n];
            for i in sample(&mut rng, params.n, d).into_iter() {
                v[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
            v
        })
        .collect();
    let report = maurey_sparsify(&x, params.eta, &forms, params.samples, params.seed)?;
    let verdicts = vec![
        Verdict::new(
            "unbiased",
            report.forms.iter().all(|f| f.unbiased),
            "|mean − A(x)| ≤ 3 standard errors",
        ),
        Verdict::new(
            "variance_bound",
            report.forms.iter().all(|f| f.within_bound),
            format!("variance ≤ {}", report.variance_bound),
        ),
    ];
    Ok(Outcome {
        payload: json!({ "x": x, "report": report }),
        verdicts,
    })
}
