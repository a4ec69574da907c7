use super::{is_separable_matrix, stability_index, OverlapMatrix, SeparabilityWindow};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Exp1};

pub const DEFAULT_PROJECTION_ITERATIONS: usize = 100_000;

const PLANT_ATTEMPTS: usize = 1_000;

#[derive(Debug, Clone)]
pub struct Projection {
    pub matrix: OverlapMatrix,
    pub residual: f64,
    pub iterations: usize,
}

fn max_dev(sums: &[f64], targets: &[f64]) -> f64 {
    sums.iter().zip(targets).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
}

fn row_sums(q: usize, x: &[f64]) -> Vec<f64> {
    x.chunks(q).map(|r| r.iter().sum()).collect()
}

fn col_sums(q: usize, x: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; q];
    for (idx, v) in x.iter().enumerate() {
        s[idx % q] += v;
    }
    s
}

fn scale(sums: &[f64], targets: &[f64], what: &str) -> Result<Vec<f64>> {
    sums.iter()
        .zip(targets)
        .enumerate()
        .map(|(i, (&s, &t))| {
            if t == 0.0 {
                Ok(0.0)
            } else if s > 0.0 {
                Ok(t / s)
            } else {
                Err(Error::domain(format!("{what} {i} has no mass but target {t}")))
            }
        })
        .collect()
}

/// Alternating row/column rescaling of a nonnegative q×q matrix towards the
/// given marginals. Returns the matrix, the final residual (largest marginal
/// deviation) and the number of sweeps.
pub fn sinkhorn(
    q: usize,
    entries: &[f64],
    row_targets: &[f64],
    col_targets: &[f64],
    max_iter: usize,
    tol: f64,
) -> Result<(Vec<f64>, f64, usize)> {
    if entries.len() != q * q || row_targets.len() != q || col_targets.len() != q {
        return Err(Error::Mismatch(format!("sinkhorn expects {q}x{q} input")));
    }
    if let Some(x) = entries.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
        return Err(Error::domain(format!("cannot project a matrix with entry {x}")));
    }
    let mut x = entries.to_vec();
    let residual = max_dev(&row_sums(q, &x), row_targets).max(max_dev(&col_sums(q, &x), col_targets));
    if residual <= tol {
        return Ok((x, residual, 0));
    }
    let mut residual = residual;
    for it in 1..=max_iter {
        let f = scale(&row_sums(q, &x), row_targets, "row")?;
        for (idx, v) in x.iter_mut().enumerate() {
            *v *= f[idx / q];
        }
        let cs = col_sums(q, &x);
        residual = max_dev(&cs, col_targets);
        if residual <= tol {
            return Ok((x, residual, it));
        }
        let g = scale(&cs, col_targets, "column")?;
        for (idx, v) in x.iter_mut().enumerate() {
            *v *= g[idx % q];
        }
        residual = max_dev(&row_sums(q, &x), row_targets);
        if residual <= tol {
            return Ok((x, residual, it));
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, residual })
}

/// Sinkhorn projection of a nonnegative matrix onto D (all row and column
/// sums `1/q`). A matrix already within `tol` is returned unchanged.
pub fn project_to_d(q: usize, entries: &[f64], iterations: usize, tol: f64) -> Result<Projection> {
    let t = vec![1.0 / q as f64; q];
    let (x, residual, iterations) = sinkhorn(q, entries, &t, &t, iterations, tol)?;
    Ok(Projection { matrix: OverlapMatrix::from_raw(q, x), residual, iterations })
}

/// Rescales every row to sum `1/q`.
pub fn project_rows(q: usize, entries: &[f64]) -> Result<OverlapMatrix> {
    let t = vec![1.0 / q as f64; q];
    let f = scale(&row_sums(q, entries), &t, "row")?;
    Ok(OverlapMatrix::from_raw(q, entries.iter().enumerate().map(|(idx, v)| v * f[idx / q]).collect()))
}

fn exp_matrix<R: Rng + ?Sized>(q: usize, rng: &mut R) -> Vec<f64> {
    (0..q * q).map(|_| Exp1.sample(rng)).collect()
}

/// Projection of an entrywise Exp(1) matrix onto D.
pub fn random_point_in_d<R: Rng + ?Sized>(q: usize, rng: &mut R) -> Result<OverlapMatrix> {
    let e = exp_matrix(q, rng);
    Ok(project_to_d(q, &e, DEFAULT_PROJECTION_ITERATIONS, 1e-13)?.matrix)
}

/// Entrywise Exp(1) matrix with rows rescaled into S.
pub fn random_point_in_s<R: Rng + ?Sized>(q: usize, rng: &mut R) -> Result<OverlapMatrix> {
    project_rows(q, &exp_matrix(q, rng))
}

/// A point of D with exactly `s` entries above the stability threshold.
///
/// `s` entries on a random partial permutation are planted with values in
/// `[(1-κ)/q, 1/q]` (κ taken as 0 when the separability window is clamped);
/// the remaining entries are Exp(1) draws projected onto the leftover
/// marginals. With `separable` the result must also avoid the window.
/// Draws failing the checks are rejected.
pub fn random_stable_point<R: Rng + ?Sized>(
    q: usize,
    k: u32,
    s: usize,
    separable: bool,
    rng: &mut R,
) -> Result<OverlapMatrix> {
    if s >= q {
        return Err(Error::param(format!("stability index {s} must be below q = {q}")));
    }
    let window = SeparabilityWindow::new(q, k);
    if separable && window.clamped && s + 1 == q {
        return Err(Error::domain(format!(
            "no separable {s}-stable point exists for q = {q}, k = {k}: the clamped window forces the last entry to 1/q"
        )));
    }
    let qf = q as f64;
    let lo = if window.clamped { 1.0 / qf } else { window.upper };
    for _ in 0..PLANT_ATTEMPTS {
        let rows = rand::seq::index::sample(rng, q, s).into_vec();
        let cols = rand::seq::index::sample(rng, q, s).into_vec();
        let mut planted = vec![None; q * q];
        let mut row_t = vec![1.0 / qf; q];
        let mut col_t = vec![1.0 / qf; q];
        for (&r, &c) in rows.iter().zip(&cols) {
            let v = if lo < 1.0 / qf { rng.random_range(lo..=1.0 / qf) } else { 1.0 / qf };
            planted[r * q + c] = Some(v);
            row_t[r] = (row_t[r] - v).max(0.0);
            col_t[c] = (col_t[c] - v).max(0.0);
        }
        let free: Vec<f64> =
            exp_matrix(q, rng).into_iter().zip(&planted).map(|(x, p)| if p.is_some() { 0.0 } else { x }).collect();
        let Ok((x, _, _)) = sinkhorn(q, &free, &row_t, &col_t, DEFAULT_PROJECTION_ITERATIONS, 1e-13) else {
            continue;
        };
        let entries: Vec<f64> = x.into_iter().zip(&planted).map(|(x, p)| p.unwrap_or(x)).collect();
        let a = OverlapMatrix::from_raw(q, entries);
        if stability_index(&a, k) != s {
            continue;
        }
        if separable && !is_separable_matrix(&a, k).value {
            continue;
        }
        return Ok(a);
    }
    Err(Error::domain(format!(
        "no {}{s}-stable point found for q = {q}, k = {k} after {PLANT_ATTEMPTS} attempts",
        if separable { "separable " } else { "" }
    )))
}

/// A tame point with stability index `s`.
pub fn random_point_in_tame<R: Rng + ?Sized>(q: usize, k: u32, s: usize, rng: &mut R) -> Result<OverlapMatrix> {
    random_stable_point(q, k, s, true, rng)
}
