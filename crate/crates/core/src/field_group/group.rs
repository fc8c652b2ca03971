use std::path::Path;
use std::sync::Arc;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use super::fpvec::is_prime;
use crate::error::{Error, Result};

/// Explicit operation tables are limited to this many elements.
pub const MAX_TABLE_ORDER: usize = 4096;

/// A verified Cayley table of a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    m: usize,
    identity: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    abelian: bool,
    /// Where the table was loaded from, kept for display.
    source: Option<String>,
}

#[derive(Deserialize, Serialize)]
struct TableFile {
    m: usize,
    identity: usize,
    table: Vec<u32>,
}

impl OpTable {
    /// Builds and verifies a row-major `m × m` table.
    ///
    /// Checks the Latin square property, the identity, two-sided inverses and
    /// associativity (Light's test over a generating set).
    pub fn new(m: usize, identity: usize, table: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("group order must be positive"));
        }
        if m > MAX_TABLE_ORDER {
            return Err(Error::domain(format!(
                "operation table of order {m} exceeds the cap {MAX_TABLE_ORDER}"
            )));
        }
        if table.len() != m * m {
            return Err(Error::domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                m * m
            )));
        }
        if identity >= m {
            return Err(Error::domain(format!("identity {identity} out of range")));
        }
        if let Some(&x) = table.iter().find(|&&x| x as usize >= m) {
            return Err(Error::domain(format!("table entry {x} out of range")));
        }
        let at = |a: usize, b: usize| table[a * m + b] as usize;

        let mut seen = bitvec![0; m];
        for a in 0..m {
            seen.fill(false);
            for b in 0..m {
                if seen.replace(at(a, b), true) {
                    return Err(Error::domain(format!("row {a} is not a permutation")));
                }
            }
            seen.fill(false);
            for b in 0..m {
                if seen.replace(at(b, a), true) {
                    return Err(Error::domain(format!("column {a} is not a permutation")));
                }
            }
        }
        for a in 0..m {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::domain(format!("{identity} is not an identity")));
            }
        }
        let mut inverses = vec![0u32; m];
        for a in 0..m {
            let b = (0..m).find(|&b| at(a, b) == identity).expect("latin row");
            if at(b, a) != identity {
                return Err(Error::domain(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = b as u32;
        }

        // Light's test: the elements `g` with (x·g)·y = x·(g·y) for all x, y
        // form a closed subset, so checking a generating set suffices.
        let mut generated = bitvec![0; m];
        generated.set(identity, true);
        let mut elements = vec![identity];
        let mut generators = Vec::new();
        for g in 0..m {
            if generated[g] {
                continue;
            }
            generators.push(g);
            let mut frontier = elements.clone();
            while let Some(x) = frontier.pop() {
                for &s in &generators {
                    let y = at(x, s);
                    if !generated[y] {
                        generated.set(y, true);
                        elements.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        for &g in &generators {
            for x in 0..m {
                let xg = at(x, g);
                for y in 0..m {
                    if at(xg, y) != at(x, at(g, y)) {
                        return Err(Error::domain("operation is not associative"));
                    }
                }
            }
        }
        let abelian = (0..m).all(|a| (0..a).all(|b| at(a, b) == at(b, a)));
        Ok(OpTable {
            m,
            identity,
            table,
            inverses,
            abelian,
            source: None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: TableFile = serde_json::from_str(text)?;
        OpTable::new(f.m, f.identity, f.table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut t = OpTable::from_json(&text)?;
        t.source = Some(path.display().to_string());
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableFile {
            m: self.m,
            identity: self.identity,
            table: self.table.clone(),
        })
        .expect("table serializes")
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }
}

/// How a group is presented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Cyclic(usize),
    /// F_p^n under addition; elements indexed lexicographically.
    Vector { p: u32, n: u32 },
    /// Direct product; the first factor is the most significant digit.
    Product(Vec<Presentation>),
    Table(Arc<OpTable>),
}

impl Presentation {
    fn order(&self) -> Result<usize> {
        match self {
            Presentation::Cyclic(m) => {
                if *m == 0 {
                    Err(Error::domain("cyclic group of order 0"))
                } else {
                    Ok(*m)
                }
            }
            Presentation::Vector { p, n } => {
                if !is_prime(*p as u64) {
                    return Err(Error::domain(format!("{p} is not prime")));
                }
                if *n == 0 {
                    return Err(Error::domain("vector group of dimension 0"));
                }
                (*p as usize)
                    .checked_pow(*n)
                    .ok_or_else(|| Error::domain("group order overflows"))
            }
            Presentation::Product(factors) => {
                if factors.is_empty() {
                    return Err(Error::domain("empty product"));
                }
                factors.iter().try_fold(1usize, |acc, f| {
                    acc.checked_mul(f.order()?)
                        .ok_or_else(|| Error::domain("group order overflows"))
                })
            }
            Presentation::Table(t) => Ok(t.m),
        }
    }

    fn is_abelian(&self) -> bool {
        match self {
            Presentation::Product(fs) => fs.iter().all(|f| f.is_abelian()),
            Presentation::Table(t) => t.abelian,
            _ => true,
        }
    }
}

/// A finite group with elements indexed `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    presentation: Presentation,
    order: usize,
    /// Product factors, most significant first.
    factors: Vec<FiniteGroup>,
    radices: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(presentation: Presentation) -> Result<Self> {
        let order = presentation.order()?;
        let factors: Vec<FiniteGroup> = match &presentation {
            Presentation::Product(fs) => fs
                .iter()
                .map(|f| FiniteGroup::new(f.clone()))
                .collect::<Result<_>>()?,
            _ => Vec::new(),
        };
        let radices = factors.iter().map(|f| f.order).collect();
        Ok(FiniteGroup {
            presentation,
            order,
            factors,
            radices,
        })
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        FiniteGroup::new(Presentation::Cyclic(m))
    }

    pub fn vector(p: u32, n: u32) -> Result<Self> {
        FiniteGroup::new(Presentation::Vector { p, n })
    }

    pub fn product(factors: Vec<FiniteGroup>) -> Result<Self> {
        FiniteGroup::new(Presentation::Product(
            factors.into_iter().map(|f| f.presentation).collect(),
        ))
    }

    pub fn from_table(table: OpTable) -> Result<Self> {
        FiniteGroup::new(Presentation::Table(Arc::new(table)))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        match &self.presentation {
            Presentation::Table(t) => t.identity,
            // Structured presentations use index 0 for every component's identity.
            _ => 0,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.presentation.is_abelian()
    }

    pub fn check_element(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "element {g} is not in a group of order {}",
                self.order
            )))
        }
    }

    fn split(&self, mut g: usize) -> Vec<usize> {
        let mut parts = vec![0; self.radices.len()];
        for (slot, &r) in parts.iter_mut().zip(&self.radices).rev() {
            *slot = g % r;
            g /= r;
        }
        parts
    }

    fn join(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&x, &r)| acc * r + x)
    }

    /// The group operation `a · b` (written `a + b` for abelian presentations).
    pub fn op(&self, a: usize, b: usize) -> usize {
        match &self.presentation {
            Presentation::Cyclic(m) => (a + b) % m,
            Presentation::Vector { p, n } => vector_op(*p as usize, *n, a, b, 1),
            Presentation::Product(_) => {
                let (pa, pb) = (self.split(a), self.split(b));
                let parts: Vec<usize> = self
                    .factors
                    .iter()
                    .zip(pa.iter().zip(&pb))
                    .map(|(f, (&x, &y))| f.op(x, y))
                    .collect();
                self.join(&parts)
            }
            Presentation::Table(t) => t.table[a * t.m + b] as usize,
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        match &self.presentation {
            Presentation::Cyclic(m) => (m - a % m) % m,
            Presentation::Vector { p, n } => vector_op(*p as usize, *n, 0, a, -1),
            Presentation::Product(_) => {
                let parts: Vec<usize> = self
                    .factors
                    .iter()
                    .zip(self.split(a))
                    .map(|(f, x)| f.inverse(x))
                    .collect();
                self.join(&parts)
            }
            Presentation::Table(t) => t.inverses[a] as usize,
        }
    }

    /// `a^q` for any integer `q` (`q·a` additively).
    pub fn power(&self, a: usize, q: i64) -> usize {
        match &self.presentation {
            Presentation::Cyclic(m) => {
                let m = *m as i128;
                ((a as i128 * (q as i128).rem_euclid(m)) % m) as usize
            }
            Presentation::Vector { p, n } => {
                let p = *p as i64;
                vector_op(p as usize, *n, 0, a, q.rem_euclid(p))
            }
            Presentation::Product(_) => {
                let parts: Vec<usize> = self
                    .factors
                    .iter()
                    .zip(self.split(a))
                    .map(|(f, x)| f.power(x, q))
                    .collect();
                self.join(&parts)
            }
            Presentation::Table(_) => {
                let base = if q < 0 { self.inverse(a) } else { a };
                let mut e = q.unsigned_abs();
                let mut acc = self.identity();
                let mut sq = base;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.op(acc, sq);
                    }
                    sq = self.op(sq, sq);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// Smallest `r ≥ 1` with `g^r` the identity.
    pub fn element_order(&self, g: usize) -> Result<usize> {
        self.check_element(g)?;
        let id = self.identity();
        let mut x = g;
        let mut r = 1;
        while x != id {
            x = self.op(x, g);
            r += 1;
            if r > self.order {
                return Err(Error::Internal(format!("element {g} has no finite order")));
            }
        }
        Ok(r)
    }

    /// Whether `u ↦ u^q` is a bijection, decided by counting its image.
    ///
    /// This is the property that makes `u ↦ u^q·g` a permutation; it accepts
    /// `q = ±1` even though the identity has order 1.
    pub fn power_map_is_permutation(&self, q: i64) -> Result<bool> {
        if q == 0 {
            return Err(Error::domain("exponent q must be nonzero"));
        }
        let mut image = bitvec![0; self.order];
        for u in 0..self.order {
            if image.replace(self.power(u, q), true) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements as F_p^n coordinate vectors, when the group is a vector group.
    pub fn as_vector_space(&self) -> Option<(u32, u32)> {
        match &self.presentation {
            Presentation::Vector { p, n } => Some((*p, *n)),
            _ => None,
        }
    }

    /// Compact text form, `cyclic:6`, `vec:3^4`, `prod(...)`, `table:@path`.
    pub fn spec(&self) -> String {
        self.presentation.to_string()
    }
}

/// `a + c·b` in F_p^n with lexicographic indices.
fn vector_op(p: usize, n: u32, mut a: usize, mut b: usize, c: i64) -> usize {
    let c = c.rem_euclid(p as i64) as usize;
    let mut out = 0;
    let mut place = 1;
    for _ in 0..n {
        let digit = (a % p + c * (b % p)) % p;
        out += digit * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}
