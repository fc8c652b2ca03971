use bitvec::prelude::*;
use rayon::prelude::*;

use super::graph::{factorial, Hypergraph};
use crate::error::{Error, Result};
use crate::field_group::FiniteGroup;
use crate::rational::Rational;

/// The hypergraph with one edge `{π_1(v),…,π_t(v)}` per vertex `v`.
///
/// Its ordered counts are those of summing over all `σ ∈ S_t`, so it is
/// `t!`-regular.
pub fn permutation_hypergraph(perms: &[Vec<usize>]) -> Result<Hypergraph> {
    let t = perms.len();
    let n = perms.first().map_or(0, Vec::len);
    let mut h = Hypergraph::new(t, n)?;
    for (j, perm) in perms.iter().enumerate() {
        if perm.len() != n {
            return Err(Error::domain(format!("permutation {j} acts on a different set")));
        }
        let mut seen = bitvec![0; n];
        for &x in perm {
            if x >= n || seen.replace(x, true) {
                return Err(Error::domain(format!("map {j} is not a bijection on [0, {n})")));
            }
        }
    }
    for v in 0..n {
        h.add_edge_unchecked(perms.iter().map(|p| p[v] as u32).collect(), 1);
    }
    h.refresh_degree();
    debug_assert!(n == 0 || h.degree() == Some(factorial(t)));
    Ok(h)
}

/// `cay(Γ, S)`: the union over `g ∈ S` of the 2-regular graphs `{u, g·u}`.
/// For `g² = 1` every edge appears twice.
pub fn cayley_graph(group: &FiniteGroup, generators: &[usize]) -> Result<Hypergraph> {
    if generators.is_empty() {
        return Err(Error::domain("generator multiset is empty"));
    }
    let m = group.order();
    let mut h = Hypergraph::new(2, m)?;
    for &g in generators {
        group.check_element(g)?;
        for u in 0..m {
            h.add_edge_unchecked(vec![u as u32, group.op(g, u) as u32], 1);
        }
    }
    h.refresh_degree();
    Ok(h)
}

/// Verifies that every `u ↦ u^{q_j}` is a permutation of the group.
pub fn check_order_condition(group: &FiniteGroup, q: &[i64]) -> Result<Vec<Vec<usize>>> {
    q.iter()
        .enumerate()
        .map(|(j, &qj)| {
            if !group.power_map_is_permutation(qj)? {
                return Err(Error::precondition(format!(
                    "q[{j}] = {qj}: u ↦ u^{qj} is not a permutation of {}",
                    group.spec()
                )));
            }
            Ok((0..group.order()).map(|u| group.power(u, qj)).collect())
        })
        .collect()
}

fn check_generators(group: &FiniteGroup, t: usize, generators: &[Vec<usize>]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::domain("generator multiset is empty"));
    }
    for g in generators {
        if g.len() != t {
            return Err(Error::domain(format!("generator {g:?} is not a {t}-tuple")));
        }
        for &x in g {
            group.check_element(x)?;
        }
    }
    Ok(())
}

/// `cay^{(t)}(Γ, q, S)`: union over `g ∈ S` of the permutation hypergraphs
/// with `π_j(u) = u^{q_j}·g[j]`. Regular of degree `t!·|S|`.
pub fn cayley_hypergraph(
    group: &FiniteGroup,
    q: &[i64],
    generators: &[Vec<usize>],
) -> Result<Hypergraph> {
    let t = q.len();
    if t < 2 {
        return Err(Error::domain("need at least two exponents"));
    }
    let powers = check_order_condition(group, q)?;
    check_generators(group, t, generators)?;
    let m = group.order();
    let mut h = Hypergraph::new(t, m)?;
    for g in generators {
        for u in 0..m {
            let tuple = (0..t)
                .map(|j| group.op(powers[j][u], g[j]) as u32)
                .collect();
            h.add_edge_unchecked(tuple, 1);
        }
    }
    h.refresh_degree();
    if h.degree() != Some(factorial(t) * generators.len() as u64) {
        return Err(Error::Internal("Cayley hypergraph is not t!|S|-regular".into()));
    }
    Ok(h)
}

/// Permanent of a 0/1 matrix given as row bitmasks, by dynamic programming
/// over column subsets.
fn permanent01(rows: &[u32], t: usize) -> u64 {
    let mut dp = vec![0u64; 1 << t];
    dp[0] = 1;
    for mask in 0..(1usize << t) {
        let row = mask.count_ones() as usize;
        if row >= t || dp[mask] == 0 {
            continue;
        }
        let mut free = rows[row] as usize & !mask;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            dp[mask | bit] += dp[mask];
            free ^= bit;
        }
    }
    dp[(1 << t) - 1]
}

/// `A_H(1_{T_1},…,1_{T_t})` for `H = cay^{(t)}(Γ, q, S)` without building `H`.
///
/// Sums `Σ_{g∈S} Σ_v Σ_σ Π_j 1_{T_j}(π_{σ(j)}(v))` and divides by `t!|S|`.
pub fn cayley_form_on_indicators(
    group: &FiniteGroup,
    q: &[i64],
    generators: &[Vec<usize>],
    sets: &[&[bool]],
) -> Result<Rational> {
    let t = q.len();
    if t > 20 {
        return Err(Error::domain("uniformity too large for indicator evaluation"));
    }
    let m = group.order();
    if sets.len() != t || sets.iter().any(|s| s.len() != m) {
        return Err(Error::domain(format!("expected {t} indicator vectors of length {m}")));
    }
    let powers = check_order_condition(group, q)?;
    check_generators(group, t, generators)?;
    let total: u64 = generators
        .par_iter()
        .map(|g| {
            let mut rows = vec![0u32; t];
            let mut sum = 0u64;
            for u in 0..m {
                rows.iter_mut().for_each(|r| *r = 0);
                for i in 0..t {
                    let point = group.op(powers[i][u], g[i]);
                    for (j, set) in sets.iter().enumerate() {
                        if set[point] {
                            rows[j] |= 1 << i;
                        }
                    }
                }
                if rows.iter().all(|&r| r != 0) {
                    sum += permanent01(&rows, t);
                }
            }
            sum
        })
        .sum();
    Ok(Rational::new(
        total as i128,
        (factorial(t) * generators.len() as u64) as i128,
    ))
}
