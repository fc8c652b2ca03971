use crate::error::{Error, Result};

/// `σ_{p,t}(n) = n^{1/2−1/p} · max{1, n^{1−1/(2t)−(t−1)/p}} · (ln n)^{t+1/2}`,
/// with `p = ∞` allowed.
pub fn sigma(p: f64, t: usize, n: usize) -> Result<f64> {
    if n < 2 || t < 3 || p.is_nan() || p < 1.0 {
        return Err(Error::domain(format!(
            "σ needs n ≥ 2, t ≥ 3 and p ≥ 1 (got n = {n}, t = {t}, p = {p})"
        )));
    }
    let nf = n as f64;
    let tf = t as f64;
    let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
    let first = nf.powf(0.5 - inv_p);
    let second = nf.powf(1.0 - 1.0 / (2.0 * tf) - (tf - 1.0) * inv_p).max(1.0);
    Ok(first * second * nf.ln().powf(tf + 0.5))
}
