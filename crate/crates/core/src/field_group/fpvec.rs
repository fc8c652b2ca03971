use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_budget, sat_pow, Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpVec {
    p: u32,
    coords: Vec<u32>,
}

impl FpVec {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= p) {
            return Err(Error::domain(format!("coordinate {c} not in [0, {p})")));
        }
        Ok(FpVec { p, coords })
    }

    /// Reduces arbitrary integers mod p.
    pub fn from_ints(p: u32, coords: &[i64]) -> Result<Self> {
        let reduced = coords.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
        FpVec::new(p, reduced)
    }

    pub fn zero(p: u32, n: usize) -> Self {
        FpVec { p, coords: vec![0; n] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVec) -> FpVec {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.dim(), other.dim());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FpVec { p: self.p, coords }
    }

    pub fn neg(&self) -> FpVec {
        let coords = self.coords.iter().map(|&a| (self.p - a) % self.p).collect();
        FpVec { p: self.p, coords }
    }

    pub fn sub(&self, other: &FpVec) -> FpVec {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> FpVec {
        let c = c.rem_euclid(self.p as i64) as u64;
        let coords = self
            .coords
            .iter()
            .map(|&a| ((a as u64 * c) % self.p as u64) as u32)
            .collect();
        FpVec { p: self.p, coords }
    }

    /// Rank in lexicographic order (first coordinate most significant).
    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn from_index(p: u32, n: usize, mut index: usize) -> FpVec {
        let mut coords = vec![0u32; n];
        for slot in coords.iter_mut().rev() {
            *slot = (index % p as usize) as u32;
            index /= p as usize;
        }
        FpVec { p, coords }
    }
}

impl fmt::Display for FpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All `p^n` vectors of F_p^n in lexicographic order.
pub fn enumerate_vectors(p: u32, n: usize, budget: u128) -> Result<Vec<FpVec>> {
    if !is_prime(p as u64) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let count = sat_pow(p as u128, n as u32);
    check_budget(&format!("enumeration of F_{p}^{n}"), count, budget)?;
    Ok((0..count as usize).map(|i| FpVec::from_index(p, n, i)).collect())
}
