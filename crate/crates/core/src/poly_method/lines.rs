use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sets::PointSet;
use super::space::Space;
use crate::error::{Error, Result};
use crate::field_group::{FiniteGroup, FpVec};
use crate::hypergraph::cayley_form_on_indicators;
use crate::rational::{self, Rational};

/// `T_1 × ⋯ × T_t` with every `T_s ⊆ F_p^n`. It contains the line `ℓ_{x,d}`
/// when `x + λd ∈ T_{λ+1}` for every `λ ∈ F_p`, which needs `t = p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    p: u32,
    n: usize,
    sets: Vec<PointSet>,
}

impl Rectangle {
    pub fn new(p: u32, n: usize, sets: Vec<PointSet>) -> Result<Self> {
        let space = Space::new(p, n, u128::MAX)?;
        if sets.iter().any(|s| s.len() != space.size) {
            return Err(Error::domain(format!("every factor must be a subset of F_{p}^{n}")));
        }
        Ok(Rectangle { p, n, sets })
    }

    pub fn from_points(p: u32, n: usize, sets: &[Vec<FpVec>]) -> Result<Self> {
        let space = Space::new(p, n, u128::MAX)?;
        let mut bits = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = PointSet::repeat(false, space.size);
            for v in s {
                space.check_vec(v)?;
                b.set(v.index(), true);
            }
            bits.push(b);
        }
        Ok(Rectangle { p, n, sets: bits })
    }

    /// `T_1 × T_2 × ⋯ × T_2` with `p` factors.
    pub fn line_shape(p: u32, n: usize, first: PointSet, rest: PointSet) -> Result<Self> {
        let mut sets = vec![first];
        sets.extend(std::iter::repeat(rest).take(p as usize - 1));
        Rectangle::new(p, n, sets)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    fn space(&self, budget: u128) -> Result<Space> {
        if self.sets.len() != self.p as usize {
            return Err(Error::domain(format!(
                "line containment needs p = {} factors, rectangle has {}",
                self.p,
                self.sets.len()
            )));
        }
        Space::new(self.p, self.n, budget)
    }

    fn contains(&self, space: &Space, x: &[u32], d: &[u32], from: usize) -> bool {
        (from..space.p).all(|lambda| self.sets[lambda][space.affine(x, d, lambda)])
    }

    pub fn contains_line(&self, x: &FpVec, d: &FpVec) -> Result<bool> {
        let space = self.space(u128::MAX)?;
        space.check_vec(x)?;
        space.check_vec(d)?;
        Ok(self.contains(&space, x.coords(), d.coords(), 0))
    }
}

fn directions(space: &Space, dirs: &[FpVec]) -> Result<Vec<Vec<u32>>> {
    dirs.iter()
        .map(|d| space.check_vec(d).map(|_| d.coords().to_vec()))
        .collect()
}

/// `𝓛_D(R)`: the number of parameter pairs `(x, d) ∈ F_p^n × D` with
/// `ℓ_{x,d}` contained in `R`.
pub fn count_lines(rect: &Rectangle, dirs: &[FpVec], budget: u128) -> Result<u64> {
    let space = rect.space(u128::MAX)?;
    let dirs = directions(&space, dirs)?;
    crate::error::check_budget("line parameter pairs", space.size as u128 * dirs.len() as u128, budget)?;
    Ok(rect.sets[0]
        .iter_ones()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map_init(
            || vec![0u32; space.n],
            |x, i| {
                space.digits(i, x);
                dirs.iter().filter(|d| rect.contains(&space, x, d, 1)).count() as u64
            },
        )
        .sum())
}

/// Lines of `R` whose direction lies in `dirs`, as `(x, d)` pairs.
pub fn lines_with_directions(rect: &Rectangle, dirs: &[FpVec], budget: u128) -> Result<Vec<(FpVec, FpVec)>> {
    let space = rect.space(u128::MAX)?;
    let coords = directions(&space, dirs)?;
    crate::error::check_budget("line parameter pairs", space.size as u128 * dirs.len() as u128, budget)?;
    let mut x = vec![0u32; space.n];
    let mut out = Vec::new();
    for i in rect.sets[0].iter_ones() {
        space.digits(i, &mut x);
        for (d, dv) in coords.iter().zip(dirs) {
            if rect.contains(&space, &x, d, 1) {
                out.push((FpVec::from_index(rect.p, rect.n, i), dv.clone()));
            }
        }
    }
    Ok(out)
}

/// `𝓛_{F_p^n}(R)`: all parameter pairs `(x, y) ∈ F_p^n × F_p^n`. Enumerates
/// `x ∈ T_1` and `x + y ∈ T_2`, which fixes `y`.
pub fn count_all_lines(rect: &Rectangle, budget: u128) -> Result<u64> {
    let space = rect.space(u128::MAX)?;
    crate::error::check_budget("line parameter pairs", (space.size as u128).pow(2), budget)?;
    let second: Vec<usize> = rect.sets[1].iter_ones().collect();
    let p = space.p as u32;
    Ok(rect.sets[0]
        .iter_ones()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map_init(
            || (vec![0u32; space.n], vec![0u32; space.n]),
            |(x, y), i| {
                space.digits(i, x);
                let mut count = 0u64;
                for &z in &second {
                    space.digits(z, y);
                    y.iter_mut().zip(x.iter()).for_each(|(yv, &xv)| *yv = (*yv + p - xv) % p);
                    if rect.contains(&space, x, y, 2) {
                        count += 1;
                    }
                }
                count
            },
        )
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdLinesCheck {
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub pass: bool,
}

/// Compares `A_{L_D}(1_{T_1}, 1_{T_2}, …, 1_{T_2})` computed from the Cayley
/// hypergraph of the lines `(0, d, 2d, …)` with `𝓛_D(T_1 × T_2 × ⋯ × T_2) / |D|`.
pub fn ldlines_identity_check(
    p: u32,
    n: usize,
    t1: &PointSet,
    t2: &PointSet,
    dirs: &[FpVec],
    budget: u128,
) -> Result<LdLinesCheck> {
    if dirs.is_empty() {
        return Err(Error::precondition("direction set is empty"));
    }
    if t1.iter_ones().any(|i| t2[i]) {
        return Err(Error::precondition("T_1 and T_2 must be disjoint"));
    }
    let rect = Rectangle::line_shape(p, n, t1.clone(), t2.clone())?;
    let rhs = Rational::new(count_lines(&rect, dirs, budget)? as i128, dirs.len() as i128);

    let group = FiniteGroup::vector(p, n as u32)?;
    let generators: Vec<Vec<usize>> = dirs
        .iter()
        .map(|d| (0..p as i64).map(|lambda| d.scale(lambda).index()).collect())
        .collect();
    let b1: Vec<bool> = t1.iter().by_vals().collect();
    let b2: Vec<bool> = t2.iter().by_vals().collect();
    let mut sets: Vec<&[bool]> = vec![&b1];
    sets.extend(std::iter::repeat(b2.as_slice()).take(p as usize - 1));
    let lhs = cayley_form_on_indicators(&group, &vec![1; p as usize], &generators, &sets)?;
    Ok(LdLinesCheck { lhs, rhs, pass: lhs == rhs })
}
