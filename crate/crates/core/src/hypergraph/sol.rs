use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_budget, sat_pow, Error, Result};
use crate::field_group::FiniteGroup;

/// A translation-invariant system: integer matrix `C` (s × t) and exponents `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    pub rows: Vec<Vec<i64>>,
    pub q: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MatrixRepr {
    Flat(Vec<i64>),
    Nested(Vec<Vec<i64>>),
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    #[serde(rename = "C")]
    c: MatrixRepr,
    q: Vec<i64>,
}

impl EquationSystem {
    pub fn new(rows: Vec<Vec<i64>>, q: Vec<i64>) -> Result<Self> {
        let t = q.len();
        if t < 2 {
            return Err(Error::domain("a system needs at least two variables"));
        }
        if q.contains(&0) {
            return Err(Error::domain("exponents q must be nonzero"));
        }
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::domain(format!("every row of C must have {t} entries")));
        }
        Ok(EquationSystem { rows, q })
    }

    /// The t-term progression system with `q = (1,…,1)`.
    pub fn ap(t: usize) -> Result<Self> {
        EquationSystem::new(ap_matrix(t), vec![1; t])
    }

    pub fn t(&self) -> usize {
        self.q.len()
    }

    /// `C q = 0`, checked in exact integer arithmetic.
    pub fn is_translation_invariant(&self) -> bool {
        self.rows.iter().all(|r| {
            r.iter()
                .zip(&self.q)
                .map(|(&c, &q)| c as i128 * q as i128)
                .sum::<i128>()
                == 0
        })
    }

    pub fn require_translation_invariant(&self) -> Result<()> {
        if self.is_translation_invariant() {
            Ok(())
        } else {
            let cq: Vec<i128> = self
                .rows
                .iter()
                .map(|r| r.iter().zip(&self.q).map(|(&c, &q)| c as i128 * q as i128).sum())
                .collect();
            Err(Error::precondition(format!("C q = {cq:?} is not zero")))
        }
    }

    pub fn to_json(&self) -> String {
        let flat = self.rows.iter().flatten().copied().collect();
        serde_json::to_string(&SystemFile {
            c: MatrixRepr::Flat(flat),
            q: self.q.clone(),
        })
        .expect("system serializes")
    }

    /// Reads `{C, q}`; `C` may be row-major flat or nested rows.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        let t = file.q.len();
        let rows = match file.c {
            MatrixRepr::Nested(rows) => rows,
            MatrixRepr::Flat(flat) => {
                if t == 0 || flat.len() % t != 0 {
                    return Err(Error::Parse(format!(
                        "flat C of length {} is not a multiple of t = {t}",
                        flat.len()
                    )));
                }
                flat.chunks(t).map(<[i64]>::to_vec).collect()
            }
        };
        EquationSystem::new(rows, file.q)
    }
}

impl Serialize for EquationSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SystemFile {
            c: MatrixRepr::Nested(self.rows.clone()),
            q: self.q.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EquationSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        EquationSystem::from_json(&value.to_string()).map_err(serde::de::Error::custom)
    }
}

/// The `(t−2) × t` matrix of t-term arithmetic progressions, rows `[…,1,−2,1,…]`.
pub fn ap_matrix(t: usize) -> Vec<Vec<i64>> {
    (0..t.saturating_sub(2))
        .map(|r| {
            let mut row = vec![0; t];
            row[r] = 1;
            row[r + 1] = -2;
            row[r + 2] = 1;
            row
        })
        .collect()
}

fn require_abelian(group: &FiniteGroup) -> Result<()> {
    if group.is_abelian() {
        Ok(())
    } else {
        Err(Error::domain(format!("{} is not abelian", group.spec())))
    }
}

fn satisfies(group: &FiniteGroup, rows: &[Vec<i64>], h: &[usize]) -> bool {
    rows.iter().all(|row| {
        row.iter()
            .zip(h)
            .fold(group.identity(), |acc, (&c, &x)| group.op(acc, group.power(x, c)))
            == group.identity()
    })
}

/// All `h ∈ Γ^t` with `C h = 0`, in lexicographic order.
pub fn sol_generator(rows: &[Vec<i64>], t: usize, group: &FiniteGroup, budget: u128) -> Result<Vec<Vec<usize>>> {
    require_abelian(group)?;
    if rows.iter().any(|r| r.len() != t) {
        return Err(Error::domain(format!("every row of C must have {t} entries")));
    }
    let m = group.order();
    let total = sat_pow(m as u128, t as u32);
    check_budget("enumeration of Γ^t", total, budget)?;
    let mut out = Vec::new();
    let mut h = vec![0usize; t];
    for _ in 0..total {
        if satisfies(group, rows, &h) {
            out.push(h.clone());
        }
        for slot in h.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// One representative per coset of `{(q_1 u,…,q_t u)}` inside `sol(C)`.
///
/// The progression system uses its structured representatives: steps
/// `(0, v, 2v, …)` for `q = 1` and points `(u, …, u)` for `q = (1, 2, …, t)`.
/// Any other system is split exhaustively, taking the lexicographically
/// first element of each coset.
pub fn coset_representatives(
    system: &EquationSystem,
    group: &FiniteGroup,
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    require_abelian(group)?;
    system.require_translation_invariant()?;
    let t = system.t();
    let m = group.order();
    if system.rows == ap_matrix(t) {
        if system.q.iter().all(|&q| q == 1) {
            return Ok((0..m)
                .map(|v| (0..t).map(|j| group.power(v, j as i64)).collect())
                .collect());
        }
        if system.q.iter().enumerate().all(|(j, &q)| q == j as i64 + 1) {
            return Ok((0..m).map(|u| vec![u; t]).collect());
        }
    }
    coset_representatives_exhaustive(system, group, budget)
}

pub(crate) fn coset_representatives_exhaustive(
    system: &EquationSystem,
    group: &FiniteGroup,
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    system.require_translation_invariant()?;
    let t = system.t();
    let m = group.order();
    let solutions = sol_generator(&system.rows, t, group, budget)?;
    let index: HashSet<&[usize]> = solutions.iter().map(Vec::as_slice).collect();
    let rank = |h: &[usize]| h.iter().fold(0usize, |acc, &x| acc * m + x);
    let mut visited: HashSet<usize> = HashSet::new();
    let shifts: Vec<Vec<usize>> = (0..m)
        .map(|u| system.q.iter().map(|&q| group.power(u, q)).collect())
        .collect();
    let mut reps = Vec::new();
    for h in &solutions {
        if visited.contains(&rank(h)) {
            continue;
        }
        reps.push(h.clone());
        for shift in &shifts {
            let moved: Vec<usize> = h.iter().zip(shift).map(|(&a, &b)| group.op(a, b)).collect();
            if !index.contains(moved.as_slice()) {
                return Err(Error::Internal("solution set is not translation invariant".into()));
            }
            visited.insert(rank(&moved));
        }
    }
    Ok(reps)
}
