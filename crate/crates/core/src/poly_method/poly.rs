use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_group::is_prime;

/// A polynomial over F_p in `n` variables with every exponent reduced into
/// `[0, p−1]` using `x^p = x`, so distinct polynomials are distinct functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPolynomial {
    p: u32,
    n: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    p: u32,
    n: usize,
    terms: Vec<(Vec<u32>, u32)>,
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn reduce_exponent(e: u32, p: u32) -> u32 {
    if e == 0 {
        0
    } else {
        (e - 1) % (p - 1) + 1
    }
}

impl FpPolynomial {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(FpPolynomial {
            p,
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(p: u32, n: usize, c: i64) -> Result<Self> {
        let mut f = FpPolynomial::zero(p, n)?;
        f.add_term(vec![0; n], c)?;
        Ok(f)
    }

    /// The variable `x_{i+1}`.
    pub fn variable(p: u32, n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::domain(format!("variable {i} out of range for n = {n}")));
        }
        let mut e = vec![0; n];
        e[i] = 1;
        Self::from_terms(p, n, vec![(e, 1)])
    }

    pub fn from_terms(p: u32, n: usize, terms: Vec<(Vec<u32>, i64)>) -> Result<Self> {
        let mut f = FpPolynomial::zero(p, n)?;
        for (e, c) in terms {
            f.add_term(e, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, mut exponents: Vec<u32>, coeff: i64) -> Result<()> {
        if exponents.len() != self.n {
            return Err(Error::domain(format!(
                "exponent vector of length {} for {} variables",
                exponents.len(),
                self.n
            )));
        }
        exponents.iter_mut().for_each(|e| *e = reduce_exponent(*e, self.p));
        let c = coeff.rem_euclid(self.p as i64) as u32;
        let slot = self.terms.entry(exponents).or_insert(0);
        *slot = (*slot + c) % self.p;
        self.terms.retain(|_, c| *c != 0);
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().rev().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> u32 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            Some(d) => degrees.all(|x| x == d),
            None => true,
        }
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        debug_assert_eq!(x.len(), self.n);
        let p = self.p as u64;
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut term = c as u64;
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    term = term * pow_mod(xi as u64, ei as u64, p) % p;
                    if term == 0 {
                        break;
                    }
                }
            }
            acc += term;
        }
        (acc % p) as u32
    }

    /// An evaluator that reuses a power table; much faster for many points.
    pub(crate) fn evaluator(&self) -> impl Fn(&[u32]) -> u32 + Sync + '_ {
        let p = self.p as usize;
        let mut table = vec![0u32; p * p];
        for a in 0..p {
            for e in 0..p {
                table[a * p + e] = pow_mod(a as u64, e as u64, p as u64) as u32;
            }
        }
        let terms: Vec<(Vec<u32>, u32)> = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        move |x: &[u32]| {
            let mut acc = 0usize;
            for (e, c) in &terms {
                let mut term = *c as usize;
                for (&xi, &ei) in x.iter().zip(e) {
                    term = term * table[xi as usize * p + ei as usize] as usize % p;
                }
                acc += term;
            }
            (acc % p) as u32
        }
    }

    fn check_same(&self, other: &FpPolynomial) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::domain("polynomials over different rings"));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpPolynomial) -> Result<FpPolynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c as i64)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> FpPolynomial {
        let c = c.rem_euclid(self.p as i64) as u64;
        let mut out = FpPolynomial {
            p: self.p,
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (e, &k) in &self.terms {
            let v = (k as u64 * c % self.p as u64) as u32;
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn sub(&self, other: &FpPolynomial) -> Result<FpPolynomial> {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &FpPolynomial) -> Result<FpPolynomial> {
        self.check_same(other)?;
        let mut out = FpPolynomial::zero(self.p, self.n)?;
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, (ca as u64 * cb as u64 % self.p as u64) as i64)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<FpPolynomial> {
        let mut acc = FpPolynomial::constant(self.p, self.n, 1)?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `f(h_1,…,h_n)` for polynomials `h_i` in a common ring.
    pub fn substitute(&self, images: &[FpPolynomial]) -> Result<FpPolynomial> {
        if images.len() != self.n {
            return Err(Error::domain(format!("{} images for {} variables", images.len(), self.n)));
        }
        let (p, m) = (images.first().map_or(self.p, |h| h.p), images.first().map_or(0, |h| h.n));
        if p != self.p || images.iter().any(|h| h.p != p || h.n != m) {
            return Err(Error::domain("substitution images live in different rings"));
        }
        let mut out = FpPolynomial::zero(p, m)?;
        for (e, &c) in &self.terms {
            let mut term = FpPolynomial::constant(p, m, c as i64)?;
            for (h, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&h.pow(k)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyFile {
            p: self.p,
            n: self.n,
            terms: self.terms().map(|(e, c)| (e.to_vec(), c)).collect(),
        })
        .expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolyFile = serde_json::from_str(text)?;
        let mut f = FpPolynomial::zero(file.p, file.n)?;
        for (e, c) in file.terms {
            f.add_term(e, c as i64)?;
        }
        Ok(f)
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            match (c, vars.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                _ => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
