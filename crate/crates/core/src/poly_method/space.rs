use crate::error::{Error, Result};
use crate::field_group::FpVec;

/// Digit arithmetic on lexicographic ranks of F_p^n.
#[derive(Debug, Clone)]
pub(crate) struct Space {
    pub p: usize,
    pub n: usize,
    pub size: usize,
}

impl Space {
    pub fn new(p: u32, n: usize, budget: u128) -> Result<Space> {
        if !crate::field_group::is_prime(p as u64) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        let size = crate::error::sat_pow(p as u128, n as u32);
        crate::error::check_budget(&format!("enumeration of F_{p}^{n}"), size, budget)?;
        Ok(Space {
            p: p as usize,
            n,
            size: size as usize,
        })
    }

    /// Digits with the first coordinate first.
    pub fn digits(&self, mut index: usize, out: &mut [u32]) {
        for slot in out.iter_mut().rev() {
            *slot = (index % self.p) as u32;
            index /= self.p;
        }
    }

    /// Rank of `x + λ·y` given digits of `x` and `y`.
    pub fn affine(&self, x: &[u32], y: &[u32], lambda: usize) -> usize {
        x.iter().zip(y).fold(0usize, |acc, (&a, &b)| {
            acc * self.p + (a as usize + lambda * b as usize) % self.p
        })
    }

    pub fn check_vec(&self, v: &FpVec) -> Result<()> {
        if v.p() as usize != self.p || v.dim() != self.n {
            return Err(Error::domain(format!(
                "vector {v} is not in F_{}^{}",
                self.p, self.n
            )));
        }
        Ok(())
    }
}

/// Parses a JSON array of coordinate vectors.
pub fn direction_set_from_json(p: u32, text: &str) -> Result<Vec<FpVec>> {
    let raw: Vec<Vec<i64>> = serde_json::from_str(text)?;
    raw.iter().map(|c| FpVec::from_ints(p, c)).collect()
}

pub fn direction_set_to_json(set: &[FpVec]) -> String {
    let raw: Vec<&[u32]> = set.iter().map(FpVec::coords).collect();
    serde_json::to_string(&raw).expect("vectors serialize")
}
