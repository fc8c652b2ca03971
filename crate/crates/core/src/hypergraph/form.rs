use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A sparse `t`-linear form on R^n with exact rational entries.
///
/// `entries[(i_1,…,i_t)] = A(e_{i_1},…,e_{i_t})`; absent keys are zero and
/// stored values are never zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearForm {
    t: usize,
    n: usize,
    entries: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Serialize, Deserialize)]
struct FormFile {
    t: usize,
    n: usize,
    entries: Vec<(Vec<u32>, String)>,
}

impl MultilinearForm {
    pub fn zero(t: usize, n: usize) -> Self {
        MultilinearForm {
            t,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        t: usize,
        n: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut form = MultilinearForm::zero(t, n);
        for (idx, v) in entries {
            form.add_entry(idx, v)?;
        }
        Ok(form)
    }

    /// Adds `value` to the entry at `idx`.
    pub fn add_entry(&mut self, idx: Vec<u32>, value: Rational) -> Result<()> {
        if idx.len() != self.t {
            return Err(Error::domain(format!(
                "index tuple of length {} for a {}-linear form",
                idx.len(),
                self.t
            )));
        }
        if idx.iter().any(|&i| i as usize >= self.n) {
            return Err(Error::domain(format!("index {idx:?} out of range {}", self.n)));
        }
        if value.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry(idx).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[u32]) -> Rational {
        self.entries.get(idx).copied().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn check_shape(&self, other: &MultilinearForm) -> Result<()> {
        if self.t != other.t || self.n != other.n {
            return Err(Error::domain(format!(
                "shape mismatch: ({}, {}) vs ({}, {})",
                self.t, self.n, other.t, other.n
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> MultilinearForm {
        let entries = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect()
        };
        MultilinearForm {
            t: self.t,
            n: self.n,
            entries,
        }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &MultilinearForm, c: &Rational) -> Result<MultilinearForm> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.accumulate(other, c);
        Ok(out)
    }

    /// In-place `self += c · other`; shapes must already agree.
    pub(crate) fn accumulate(&mut self, other: &MultilinearForm, c: &Rational) {
        debug_assert_eq!((self.t, self.n), (other.t, other.n));
        for (k, v) in &other.entries {
            let slot = self.entries.entry(k.clone()).or_insert_with(Rational::zero);
            *slot += v * c;
        }
        self.entries.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.add_scaled(other, &rational::one())
    }

    pub fn sub(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.add_scaled(other, &-rational::one())
    }

    /// Weighted sum `Σ c_i A_i` of same-shape forms.
    pub fn linear_combination(forms: &[&MultilinearForm], coeffs: &[Rational]) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::domain("empty linear combination"))?;
        if forms.len() != coeffs.len() {
            return Err(Error::domain("coefficient count mismatch"));
        }
        let mut out = MultilinearForm::zero(first.t, first.n);
        for (f, c) in forms.iter().zip(coeffs) {
            out.check_shape(f)?;
            out.accumulate(f, c);
        }
        Ok(out)
    }

    /// The entrywise absolute value `|A|`.
    pub fn abs(&self) -> MultilinearForm {
        MultilinearForm {
            t: self.t,
            n: self.n,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.abs())).collect(),
        }
    }

    fn check_args<T>(&self, xs: &[T], len: impl Fn(&T) -> usize) -> Result<()> {
        if xs.len() != self.t || xs.iter().any(|x| len(x) != self.n) {
            return Err(Error::domain(format!(
                "expected {} vectors of length {}",
                self.t, self.n
            )));
        }
        Ok(())
    }

    /// Exact value `A(x[1],…,x[t])`.
    pub fn evaluate(&self, xs: &[Vec<Rational>]) -> Result<Rational> {
        self.check_args(xs, |x| x.len())?;
        let mut total = Rational::zero();
        for (idx, v) in &self.entries {
            let mut term = *v;
            for (x, &i) in xs.iter().zip(idx) {
                term *= x[i as usize];
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Exact value on indicator vectors `A(1_{T_1},…,1_{T_t})`.
    pub fn evaluate_indicators(&self, sets: &[&[bool]]) -> Result<Rational> {
        self.check_args(sets, |x| x.len())?;
        let mut total = Rational::zero();
        for (idx, v) in &self.entries {
            if sets.iter().zip(idx).all(|(s, &i)| s[i as usize]) {
                total += v;
            }
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, xs: &[&[f64]]) -> Result<f64> {
        self.check_args(xs, |x| x.len())?;
        Ok(self
            .entries
            .iter()
            .map(|(idx, v)| {
                rational::to_f64(v)
                    * xs.iter().zip(idx).map(|(x, &i)| x[i as usize]).product::<f64>()
            })
            .sum())
    }

    /// `marginals[j][s] = |A|(1,…,e_s,…,1)` with `e_s` in slot `j`.
    pub fn abs_marginals(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n]; self.t];
        for (idx, v) in &self.entries {
            let a = v.abs();
            for (j, &i) in idx.iter().enumerate() {
                out[j][i as usize] += a;
            }
        }
        out
    }

    /// Invariance under simultaneous permutation of the arguments.
    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(idx, v)| {
            let mut perm = idx.clone();
            // Adjacent transpositions generate the symmetric group.
            (0..self.t.saturating_sub(1)).all(|j| {
                perm.swap(j, j + 1);
                let ok = self.get(&perm) == *v;
                perm.swap(j, j + 1);
                ok
            })
        })
    }

    pub fn to_json(&self) -> String {
        let file = FormFile {
            t: self.t,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), rational::format(v)))
                .collect(),
        };
        serde_json::to_string(&file).expect("form serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FormFile = serde_json::from_str(text)?;
        if file.t == 0 || file.n == 0 {
            return Err(Error::domain("form needs t ≥ 1 and n ≥ 1"));
        }
        let entries = file
            .entries
            .into_iter()
            .map(|(k, v)| Ok((k, rational::parse(&v)?)))
            .collect::<Result<Vec<_>>>()?;
        MultilinearForm::from_entries(file.t, file.n, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn diag3() -> MultilinearForm {
        MultilinearForm::from_entries(3, 2, (0..2).map(|i| (vec![i, i, i], r(1, 1)))).unwrap()
    }

    #[test]
    fn evaluation_and_arithmetic() {
        let a = diag3();
        let ones = vec![vec![r(1, 1); 2]; 3];
        assert_eq!(a.evaluate(&ones).unwrap(), r(2, 1));
        let b = a.sub(&a).unwrap();
        assert!(b.is_zero());
        assert_eq!(a.scale(&r(-1, 2)).abs(), a.scale(&r(1, 2)));
        assert!(a.is_symmetric());
        let mut c = a.clone();
        c.add_entry(vec![0, 0, 1], r(1, 3)).unwrap();
        assert!(!c.is_symmetric());
        assert!(c.add_entry(vec![0, 0], r(1, 1)).is_err());
        assert!(c.add_entry(vec![0, 0, 2], r(1, 1)).is_err());
        let t: Vec<bool> = vec![true, false];
        assert_eq!(c.evaluate_indicators(&[&t, &t, &[true, true]]).unwrap(), r(4, 3));
    }

    #[test]
    fn marginals() {
        let mut a = diag3();
        a.add_entry(vec![0, 1, 1], r(-1, 2)).unwrap();
        let m = a.abs_marginals();
        assert_eq!(m[0], vec![r(3, 2), r(1, 1)]);
        assert_eq!(m[1], vec![r(1, 1), r(3, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let mut a = diag3();
        a.add_entry(vec![1, 0, 1], r(-5, 7)).unwrap();
        let back = MultilinearForm::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i128..7, 1i128..5).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn evaluation_is_linear_in_each_slot(
            entries in proptest::collection::vec((proptest::collection::vec(0u32..3, 3), small_rational()), 0..12),
            x in proptest::collection::vec(small_rational(), 3),
            y in proptest::collection::vec(small_rational(), 3),
            z in proptest::collection::vec(small_rational(), 3),
            w in proptest::collection::vec(small_rational(), 3),
            slot in 0usize..3,
        ) {
            let a = MultilinearForm::from_entries(3, 3, entries).unwrap();
            let mut args = vec![z.clone(), w.clone(), z.clone()];
            let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            args[slot] = sum;
            let lhs = a.evaluate(&args).unwrap();
            args[slot] = x.clone();
            let left = a.evaluate(&args).unwrap();
            args[slot] = y.clone();
            let right = a.evaluate(&args).unwrap();
            prop_assert_eq!(lhs, left + right);
        }
    }
}
