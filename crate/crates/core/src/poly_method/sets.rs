use bitvec::prelude::*;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::poly::FpPolynomial;
use super::space::Space;
use crate::error::{Error, Result};
use crate::field_group::FpVec;

/// A subset of F_p^n as a bitset over lexicographic ranks.
pub type PointSet = BitVec<usize, Lsb0>;

/// `f(x)` for every `x ∈ F_p^n`, in rank order.
pub fn values(f: &FpPolynomial, budget: u128) -> Result<Vec<u32>> {
    let space = Space::new(f.p(), f.n(), budget)?;
    let eval = f.evaluator();
    Ok((0..space.size)
        .into_par_iter()
        .map_init(
            || vec![0u32; space.n],
            |digits, i| {
                space.digits(i, digits);
                eval(digits)
            },
        )
        .collect())
}

pub fn zero_set(f: &FpPolynomial, budget: u128) -> Result<PointSet> {
    Ok(values(f, budget)?.iter().map(|&v| v == 0).collect())
}

pub fn level_set(f: &FpPolynomial, a: u32, budget: u128) -> Result<PointSet> {
    if a % f.p() == 0 {
        return Err(Error::domain("level sets are taken at nonzero values"));
    }
    Ok(values(f, budget)?.iter().map(|&v| v == a % f.p()).collect())
}

pub fn set_size(set: &PointSet) -> usize {
    set.count_ones()
}

pub fn set_points(set: &PointSet, p: u32, n: usize) -> Vec<FpVec> {
    set.iter_ones().map(|i| FpVec::from_index(p, n, i)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DlszReport {
    pub zeros: u64,
    pub degree: u32,
    pub bound: f64,
    pub pass: bool,
}

/// Compares `|Z(f)|` with `(1 − p^{−d/(p−1)})·p^n` for the reduced degree `d`.
pub fn dlsz_bound_check(f: &FpPolynomial, budget: u128) -> Result<DlszReport> {
    let degree = f
        .degree()
        .ok_or_else(|| Error::precondition("the zero polynomial vanishes everywhere"))?;
    let zeros = set_size(&zero_set(f, budget)?) as u64;
    let (p, n) = (f.p() as f64, f.n() as i32);
    let bound = (1.0 - p.powf(-(degree as f64) / (p - 1.0))) * p.powi(n);
    Ok(DlszReport {
        zeros,
        degree,
        bound,
        pass: zeros as f64 <= bound + 1e-9 * bound.max(1.0),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyWarningReport {
    pub solutions: u64,
    pub total_degree: u32,
    /// `p^{n−d}`.
    pub bound: u64,
    pub pass: bool,
}

/// Counts common zeros of a system with `Σ deg f_i < n` and checks that the
/// count is `0` or at least `p^{n−Σ deg f_i}`.
pub fn chevalley_warning_check(system: &[FpPolynomial], budget: u128) -> Result<ChevalleyWarningReport> {
    let first = system
        .first()
        .ok_or_else(|| Error::domain("empty polynomial system"))?;
    let (p, n) = (first.p(), first.n());
    if system.iter().any(|f| f.p() != p || f.n() != n) {
        return Err(Error::domain("polynomials over different rings"));
    }
    let total_degree: u32 = system.iter().map(|f| f.degree().unwrap_or(0)).sum();
    if total_degree as usize >= n {
        return Err(Error::precondition(format!(
            "total degree {total_degree} is not below n = {n}"
        )));
    }
    let space = Space::new(p, n, budget)?;
    let evals: Vec<_> = system.iter().map(FpPolynomial::evaluator).collect();
    let solutions = (0..space.size)
        .into_par_iter()
        .map_init(
            || vec![0u32; n],
            |digits, i| {
                space.digits(i, digits);
                evals.iter().all(|e| e(digits) == 0) as u64
            },
        )
        .sum::<u64>();
    let bound = (p as u64).pow(n as u32 - total_degree);
    Ok(ChevalleyWarningReport {
        solutions,
        total_degree,
        bound,
        pass: solutions == 0 || solutions >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, p: u32, n: usize) -> FpPolynomial {
        FpPolynomial::variable(p, n, i).unwrap()
    }

    #[test]
    fn coordinate_hyperplane_sets() {
        let f = x(0, 3, 2);
        let z = zero_set(&f, 100).unwrap();
        assert_eq!(set_size(&z), 3);
        assert_eq!(set_size(&level_set(&f, 1, 100).unwrap()), 3);
        let two = level_set(&f, 2, 100).unwrap();
        let l1 = level_set(&f, 1, 100).unwrap();
        let union = z.clone() | l1.clone() | two.clone();
        assert!(union.all());
        assert_eq!(set_size(&z) + set_size(&l1) + set_size(&two), 9);
        assert!(set_points(&z, 3, 2).iter().all(|v| v.coords()[0] == 0));
        assert!(level_set(&f, 3, 100).is_err());
    }

    #[test]
    fn budget_is_respected() {
        let f = x(0, 3, 10);
        assert!(matches!(zero_set(&f, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn dlsz_examples() {
        let r = dlsz_bound_check(&x(0, 3, 2), 100).unwrap();
        assert_eq!(r.zeros, 3);
        assert!((r.bound - (1.0 - 3f64.powf(-0.5)) * 9.0).abs() < 1e-12 && r.pass);

        let r = dlsz_bound_check(&x(0, 3, 2).mul(&x(1, 3, 2)).unwrap(), 100).unwrap();
        assert_eq!(r.zeros, 5);
        assert!((r.bound - 6.0).abs() < 1e-12 && r.pass);

        let r = dlsz_bound_check(&FpPolynomial::constant(3, 2, 1).unwrap(), 100).unwrap();
        assert_eq!((r.zeros, r.bound, r.pass), (0, 0.0, true));
    }

    #[test]
    fn chevalley_warning_examples() {
        let r = chevalley_warning_check(&[x(0, 3, 2).add(&x(1, 3, 2)).unwrap()], 100).unwrap();
        assert_eq!((r.solutions, r.bound, r.pass), (3, 3, true));
        let r = chevalley_warning_check(&[x(0, 3, 3), x(1, 3, 3)], 100).unwrap();
        assert_eq!((r.solutions, r.bound, r.pass), (3, 3, true));
        let sq = x(0, 3, 1).pow(2).unwrap().add(&FpPolynomial::constant(3, 1, 1).unwrap()).unwrap();
        assert!(matches!(chevalley_warning_check(&[sq], 100), Err(Error::Precondition(_))));
    }
}
