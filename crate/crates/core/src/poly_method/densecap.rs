use super::interp::interpolate_homogeneous;
use super::lines::{count_all_lines, lines_with_directions, Rectangle};
use super::poly::FpPolynomial;
use super::sets::{values, PointSet};
use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::field_group::FpVec;

#[derive(Debug, Clone)]
pub struct DensecapOptions {
    /// Require `n ≥ p²` instead of `2n > p² − p`.
    pub strict_n: bool,
    pub budget: u128,
}

impl Default for DensecapOptions {
    fn default() -> Self {
        DensecapOptions {
            strict_n: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DensecapResult {
    pub p: u32,
    pub n: usize,
    pub directions: Vec<FpVec>,
    pub polynomial: FpPolynomial,
    /// The value `a` defining `T_2 = {f = a}`.
    pub level: u32,
    pub t1: PointSet,
    pub t2: PointSet,
    /// All parameter pairs `(x, y)` with `ℓ_{x,y}` in `T_1 × T_2 × ⋯ × T_2`.
    pub line_count: u64,
    /// `p^{2n+p−p²}`.
    pub bound: u64,
    /// Contained lines whose direction is in `D`; always empty.
    pub violations: Vec<(FpVec, FpVec)>,
    /// Whether `ℓ_{0,y}` is contained for the first `y ∈ T_2`.
    pub witness_ok: bool,
}

impl DensecapResult {
    pub fn t1_size(&self) -> usize {
        self.t1.count_ones()
    }

    pub fn t2_size(&self) -> usize {
        self.t2.count_ones()
    }

    pub fn count_ok(&self) -> bool {
        self.line_count >= self.bound
    }

    pub fn verify(&self) -> Result<()> {
        if !self.violations.is_empty() {
            let (x, d) = &self.violations[0];
            return Err(Error::Invariant(format!(
                "{} contained lines have a direction in D, e.g. x = {x}, d = {d}",
                self.violations.len()
            )));
        }
        if !self.count_ok() {
            return Err(Error::Invariant(format!(
                "line count {} is below p^(2n+p−p²) = {}",
                self.line_count, self.bound
            )));
        }
        if !self.witness_ok {
            return Err(Error::Invariant("the line through 0 is not contained".into()));
        }
        Ok(())
    }
}

/// `g_0(x, y) = f(x)` and `g_λ(x, y) = f(x + λy) − a` for `λ ≠ 0`, in the `2n`
/// variables `(x_1,…,x_n,y_1,…,y_n)`. Their common zeros are exactly the lines
/// of `Z(f) × {f = a} × ⋯ × {f = a}`.
pub fn line_system(f: &FpPolynomial, a: u32) -> Result<Vec<FpPolynomial>> {
    let (p, n) = (f.p(), f.n());
    (0..p as i64)
        .map(|lambda| {
            let images = (0..n)
                .map(|i| {
                    let x = FpPolynomial::variable(p, 2 * n, i)?;
                    let y = FpPolynomial::variable(p, 2 * n, n + i)?;
                    x.add(&y.scale(lambda))
                })
                .collect::<Result<Vec<_>>>()?;
            let g = f.substitute(&images)?;
            if lambda == 0 {
                Ok(g)
            } else {
                g.sub(&FpPolynomial::constant(p, 2 * n, a as i64)?)
            }
        })
        .collect()
}

/// Builds a rectangle `T_1 × T_2 × ⋯ × T_2 ⊆ (F_p^n)^p` containing many lines
/// but none with direction in `D`: `f` is a homogeneous degree-`(p−1)`
/// interpolant vanishing on `D`, `T_1 = Z(f)` and `T_2 = {f = a}` for the
/// smallest nonzero `a` with a nonempty level set.
pub fn densecap_construct(p: u32, n: usize, dirs: &[FpVec], options: &DensecapOptions) -> Result<DensecapResult> {
    let (pu, nu) = (p as usize, n);
    if options.strict_n && nu < pu * pu {
        return Err(Error::precondition(format!("n = {n} is below p² = {}", pu * pu)));
    }
    if 2 * nu <= pu * pu - pu {
        return Err(Error::precondition(format!(
            "2n = {} is not above p² − p = {}",
            2 * nu,
            pu * pu - pu
        )));
    }
    let f = interpolate_homogeneous(p, n, dirs, p - 1)?;
    let vals = values(&f, options.budget)?;
    let level = (1..p)
        .find(|&a| vals.contains(&a))
        .ok_or_else(|| Error::Internal("nonzero interpolant with no nonzero value".into()))?;
    let t1: PointSet = vals.iter().map(|&v| v == 0).collect();
    let t2: PointSet = vals.iter().map(|&v| v == level).collect();
    let rect = Rectangle::line_shape(p, n, t1.clone(), t2.clone())?;
    let line_count = count_all_lines(&rect, options.budget)?;
    let violations = lines_with_directions(&rect, dirs, options.budget)?;
    let y = FpVec::from_index(p, n, t2.first_one().expect("level set is nonempty"));
    let witness_ok = rect.contains_line(&FpVec::zero(p, n), &y)?;
    let exponent = (2 * nu + pu) - pu * pu;
    Ok(DensecapResult {
        p,
        n,
        directions: dirs.to_vec(),
        polynomial: f,
        level,
        t1,
        t2,
        line_count,
        bound: (p as u64).pow(exponent as u32),
        violations,
        witness_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_method::{chevalley_warning_check, count_lines, set_points, zero_set};
    use rand::{Rng, SeedableRng};

    fn random_dirs(rng: &mut impl Rng, p: u32, n: usize, k: usize) -> Vec<FpVec> {
        (0..k)
            .map(|_| FpVec::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect()).unwrap())
            .collect()
    }

    #[test]
    fn binary_case_splits_by_a_hyperplane() {
        let d = vec![FpVec::from_ints(2, &[1, 1, 0]).unwrap()];
        let r = densecap_construct(2, 3, &d, &DensecapOptions::default()).unwrap();
        assert_eq!((r.t1_size(), r.t2_size()), (4, 4));
        assert!(r.violations.is_empty() && r.witness_ok);
        assert_eq!(r.line_count, 16);
        r.verify().unwrap();
    }

    #[test]
    fn small_ternary_runs_meet_the_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for n in 4..=5 {
            for _ in 0..3 {
                let k = rng.gen_range(0..(n * (n + 1) / 2));
                let dirs = random_dirs(&mut rng, 3, n, k);
                let r = densecap_construct(3, n, &dirs, &DensecapOptions::default()).unwrap();
                r.verify().unwrap();
            }
        }
    }

    #[test]
    fn preconditions() {
        let opts = DensecapOptions::default();
        assert!(matches!(densecap_construct(3, 3, &[], &opts), Err(Error::Precondition(_))));
        let strict = DensecapOptions {
            strict_n: true,
            ..opts.clone()
        };
        assert!(matches!(densecap_construct(3, 5, &[], &strict), Err(Error::Precondition(_))));
        let too_many: Vec<FpVec> = (0..15).map(|i| FpVec::from_index(3, 5, i)).collect();
        assert!(matches!(densecap_construct(3, 5, &too_many, &opts), Err(Error::Precondition(_))));
        let r = densecap_construct(3, 4, &[], &opts).unwrap();
        assert_eq!(r.polynomial.to_string(), "x1^2");
    }

    #[test]
    fn line_system_zeros_are_the_lines() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        let p = 3;
        let n = 2;
        for _ in 0..5 {
            let dirs = random_dirs(&mut rng, p, n, 1);
            let f = interpolate_homogeneous(p, n, &dirs, p - 1).unwrap();
            let vals = values(&f, 1000).unwrap();
            let Some(a) = (1..p).find(|a| vals.contains(a)) else { continue };
            let t1: PointSet = vals.iter().map(|&v| v == 0).collect();
            let t2: PointSet = vals.iter().map(|&v| v == a).collect();
            let rect = Rectangle::line_shape(p, n, t1, t2).unwrap();
            let lines = count_all_lines(&rect, 1 << 20).unwrap();
            let sys = line_system(&f, a).unwrap();
            // Count common zeros directly; the degree condition of the
            // Chevalley–Warning check does not hold at this size.
            let total = 3usize.pow(4);
            let zeros = (0..total)
                .filter(|&i| {
                    let z = FpVec::from_index(p, 2 * n, i);
                    sys.iter().all(|g| g.eval(z.coords()) == 0)
                })
                .count() as u64;
            assert_eq!(zeros, lines);
        }
        // At p = 2 the system has total degree 2 < 2n once n ≥ 2.
        let f = interpolate_homogeneous(2, 3, &random_dirs(&mut rng, 2, 3, 1), 1).unwrap();
        let sys = line_system(&f, 1).unwrap();
        let cw = chevalley_warning_check(&sys, 1 << 20).unwrap();
        assert!(cw.pass && cw.solutions > 0);
    }

    #[test]
    fn no_line_has_a_direction_in_the_zero_set() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for p in [2u32, 3] {
            for n in 1..=5 {
                for _ in 0..3 {
                    let d = rng.gen_range(1..p.max(2));
                    let dim = (n..n + d as usize).product::<usize>() / (1..=d as usize).product::<usize>();
                    let k = rng.gen_range(0..dim);
                    let dirs = random_dirs(&mut rng, p, n, k);
                    let f = interpolate_homogeneous(p, n, &dirs, d).unwrap();
                    let vals = values(&f, 1 << 20).unwrap();
                    let z = zero_set(&f, 1 << 20).unwrap();
                    let zero_dirs = set_points(&z, p, n);
                    for a in (1..p).filter(|a| vals.contains(a)) {
                        let t2: PointSet = vals.iter().map(|&v| v == a).collect();
                        let rect = Rectangle::line_shape(p, n, z.clone(), t2).unwrap();
                        assert_eq!(count_lines(&rect, &zero_dirs, 1 << 30).unwrap(), 0);
                    }
                }
            }
        }
    }
}
