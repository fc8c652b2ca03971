use super::poly::{inv_mod, FpPolynomial};
use super::space::Space;
use crate::error::{Error, Result};
use crate::field_group::FpVec;

/// Homogeneous degree-`d` exponent vectors with entries `≤ p−1`, in
/// descending lexicographic order (so `x_1^d` comes first).
pub fn homogeneous_monomials(p: u32, n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(p: u32, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            if left <= p - 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in (0..=left.min(p - 1)).rev() {
            cur.push(e);
            rec(p, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(p, n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A nonzero homogeneous polynomial of degree `d` vanishing on `D`.
///
/// Solves the evaluation system over the monomial basis by Gauss–Jordan
/// elimination; the first free column is set to 1 and the pivot variables
/// follow. Requires `d ≤ p−1` so that the basis has `C(n+d−1, d)` elements.
pub fn interpolate_homogeneous(p: u32, n: usize, points: &[FpVec], d: u32) -> Result<FpPolynomial> {
    let space = Space::new(p, n, u128::MAX)?;
    for v in points {
        space.check_vec(v)?;
    }
    if d > p - 1 {
        return Err(Error::precondition(format!(
            "degree {d} exceeds p − 1 = {}; reduced homogeneous monomials would not span",
            p - 1
        )));
    }
    let dim = binomial((n as u64) + d as u64 - 1, d as u64);
    if points.len() as u128 >= dim {
        return Err(Error::precondition(format!(
            "|D| = {} is not below C(n+d−1, d) = {dim}",
            points.len()
        )));
    }
    let basis = homogeneous_monomials(p, n, d);
    debug_assert_eq!(basis.len() as u128, dim);
    let pm = p as u64;
    let cols = basis.len();
    let mut rows: Vec<Vec<u64>> = points
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|e| {
                    FpPolynomial::from_terms(p, n, vec![(e.clone(), 1)])
                        .expect("valid ring")
                        .eval(x.coords()) as u64
                })
                .collect()
        })
        .collect();
    // Gauss–Jordan elimination to reduced row echelon form.
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], pm);
        rows[r].iter_mut().for_each(|v| *v = *v * inv % pm);
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let factor = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + pm - factor * rows[r][j] % pm) % pm;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .ok_or_else(|| Error::Internal("evaluation matrix has a trivial kernel".into()))?;
    let mut coeffs = vec![0u64; cols];
    coeffs[free] = 1;
    for (row, &c) in pivots.iter().enumerate() {
        coeffs[c] = (pm - rows[row][free]) % pm;
    }
    let f = FpPolynomial::from_terms(
        p,
        n,
        basis.into_iter().zip(coeffs).map(|(e, c)| (e, c as i64)).collect(),
    )?;
    if f.is_zero() || points.iter().any(|x| f.eval(x.coords()) != 0) {
        return Err(Error::Internal("interpolant failed verification".into()));
    }
    Ok(f)
}
