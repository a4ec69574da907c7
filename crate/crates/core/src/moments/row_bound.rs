//! Upper bounds on the entropy of a single row.
//!
//! A row `a` with `Σ a_j = 1/q` is compared at the probability scale: the
//! bounds dominate the entropy of `q·a`.

use super::{entropy_of, xlogx};
use crate::error::{Error, Result};

/// `h(z) = -z ln z - (1-z) ln(1-z)`
pub fn binary_entropy(z: f64) -> f64 {
    -xlogx(z) - xlogx(1.0 - z)
}

/// `coef · ln(count)` with the `0 · ln 0 = 0` convention. An empty count
/// can only carry rounding mass, so it contributes 0 as well.
fn weighted_log(coef: f64, count: usize) -> f64 {
    if coef == 0.0 || count == 0 {
        0.0
    } else {
        coef * (count as f64).ln()
    }
}

fn check_row(row: &[f64], cols: &[usize], tol: f64) -> Result<f64> {
    let q = row.len();
    if q == 0 {
        return Err(Error::param("empty row"));
    }
    if let Some(x) = row.iter().find(|x| !(**x >= 0.0)) {
        return Err(Error::domain(format!("row entry {x} is negative")));
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0 / q as f64).abs() > tol {
        return Err(Error::domain(format!("row sums to {sum}, expected {}", 1.0 / q as f64)));
    }
    let mut seen = vec![false; q];
    for &j in cols {
        if j >= q || std::mem::replace(&mut seen[j], true) {
            return Err(Error::param(format!("column set {cols:?} is invalid for q = {q}")));
        }
    }
    Ok(q as f64)
}

/// Entropy of `q·a`.
pub fn scaled_row_entropy(row: &[f64]) -> Result<f64> {
    let q = row.len() as f64;
    let scaled: Vec<f64> = row.iter().map(|x| q * x).collect();
    entropy_of(&scaled)
}

/// `h(r) + r ln|J| + (1-r) ln(q-|J|)` with `r = q Σ_{j∈J} a_j`.
pub fn entropy_row_bound(row: &[f64], cols: &[usize], tol: f64) -> Result<f64> {
    let qf = check_row(row, cols, tol)?;
    let q = row.len();
    let r = (qf * cols.iter().map(|&j| row[j]).sum::<f64>()).clamp(0.0, 1.0);
    Ok(binary_entropy(r) + weighted_log(r, cols.len()) + weighted_log(1.0 - r, q - cols.len()))
}

/// Variant with the first entry split off: for `J` not containing index 0
/// and `0 < |J| < q-1`,
/// `h(q a_0) + (1 - q a_0) h(r/(1 - q a_0)) + r ln|J| + (1 - r - q a_0) ln(q - |J| - 1)`.
pub fn entropy_row_bound_pinned(row: &[f64], cols: &[usize], tol: f64) -> Result<f64> {
    let qf = check_row(row, cols, tol)?;
    let q = row.len();
    if cols.contains(&0) {
        return Err(Error::param("the pinned column 0 may not be in J"));
    }
    if cols.is_empty() || cols.len() >= q - 1 {
        return Err(Error::param(format!("need 0 < |J| < q - 1, got |J| = {}", cols.len())));
    }
    let a0 = (qf * row[0]).clamp(0.0, 1.0);
    if a0 >= 1.0 {
        return Err(Error::domain("the pinned entry carries the whole row"));
    }
    let r = (qf * cols.iter().map(|&j| row[j]).sum::<f64>()).clamp(0.0, 1.0 - a0);
    Ok(binary_entropy(a0)
        + (1.0 - a0) * binary_entropy(r / (1.0 - a0))
        + weighted_log(r, cols.len())
        + weighted_log((1.0 - r - a0).max(0.0), q - cols.len() - 1))
}
