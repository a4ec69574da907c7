use crate::error::{Error, Result};
use crate::simulator::Coloring;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt::Write as _;

/// A q×q nonnegative matrix with entries summing to 1, stored row-major.
///
/// Construction checks the total mass against [`OverlapMatrix::DEFAULT_TOL`];
/// domain membership (row/column sums) is checked separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct OverlapMatrix {
    q: usize,
    entries: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMatrix {
    q: usize,
    entries: Vec<f64>,
}

impl TryFrom<RawMatrix> for OverlapMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        OverlapMatrix::new(raw.q, raw.entries)
    }
}

impl OverlapMatrix {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(q: usize, entries: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(q, entries, Self::DEFAULT_TOL)
    }

    pub fn with_tolerance(q: usize, entries: Vec<f64>, tol: f64) -> Result<Self> {
        let m = Self::nonnegative(q, entries)?;
        let total = m.total();
        if (total - 1.0).abs() > tol {
            return Err(Error::domain(format!("entries sum to {total}, expected 1")));
        }
        Ok(m)
    }

    /// Checks shape and signs only; the total mass is not constrained.
    pub fn nonnegative(q: usize, entries: Vec<f64>) -> Result<Self> {
        if q == 0 {
            return Err(Error::param("q must be positive"));
        }
        if entries.len() != q * q {
            return Err(Error::Mismatch(format!("expected {} entries for q = {q}, got {}", q * q, entries.len())));
        }
        if let Some((idx, x)) = entries.iter().enumerate().find(|(_, x)| !(**x >= 0.0) || !x.is_finite()) {
            return Err(Error::domain(format!("entry ({}, {}) = {x} is negative or not finite", idx / q, idx % q)));
        }
        Ok(OverlapMatrix { q, entries })
    }

    pub(crate) fn from_raw(q: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), q * q);
        OverlapMatrix { q, entries }
    }

    pub fn from_fn(q: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..q * q).map(|idx| f(idx / q, idx % q)).collect();
        Self::new(q, entries)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.q + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.q..(i + 1) * self.q]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.q).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.q];
        for (idx, x) in self.entries.iter().enumerate() {
            sums[idx % self.q] += x;
        }
        sums
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.q).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> OverlapMatrix {
        let q = self.q;
        OverlapMatrix::from_raw(q, (0..q * q).map(|idx| self.get(idx % q, idx / q)).collect())
    }

    /// `Σ a_ij^k`
    pub fn power_sum(&self, k: u32) -> f64 {
        crate::moments::compensated_sum(self.entries.iter().map(|x| x.powi(k as i32)))
    }

    pub fn max_abs_diff(&self, other: &OverlapMatrix) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Lexicographic order of the entries; used to break ties reproducibly.
    pub fn lex_cmp(&self, other: &OverlapMatrix) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.q.cmp(&other.q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per line, comma separated, shortest round-trip decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.q {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
            })
            .collect::<Result<_>>()?;
        let q = rows.len();
        if rows.iter().any(|r| r.len() != q) {
            return Err(Error::Parse("CSV matrix is not square".into()));
        }
        Self::new(q, rows.concat())
    }
}

/// Overlap `a_ij = |σ^{-1}(i) ∩ τ^{-1}(j)| / n`.
pub fn overlap_of(sigma: &Coloring, tau: &Coloring) -> Result<OverlapMatrix> {
    let counts = overlap_counts(sigma, tau)?;
    let n = sigma.n() as f64;
    Ok(OverlapMatrix::from_raw(sigma.q(), counts.into_iter().map(|c| c as f64 / n).collect()))
}

/// Raw counts `|σ^{-1}(i) ∩ τ^{-1}(j)|`, row-major.
pub fn overlap_counts(sigma: &Coloring, tau: &Coloring) -> Result<Vec<usize>> {
    if sigma.n() != tau.n() || sigma.q() != tau.q() {
        return Err(Error::Mismatch(format!(
            "colorings have (n, q) = ({}, {}) and ({}, {})",
            sigma.n(),
            sigma.q(),
            tau.n(),
            tau.q()
        )));
    }
    let q = sigma.q();
    let mut counts = vec![0usize; q * q];
    for (&s, &t) in sigma.colors().iter().zip(tau.colors()) {
        counts[s as usize * q + t as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[u32]) -> Coloring {
        Coloring::from_one_based(v, 2).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let s = col(&[1, 1, 2, 2]);
        assert_eq!(overlap_of(&s, &s).unwrap().entries(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(overlap_of(&s, &col(&[2, 2, 1, 1])).unwrap().entries(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(overlap_of(&s, &col(&[1, 2, 1, 2])).unwrap().entries(), &[0.25; 4]);
    }

    #[test]
    fn overlap_mismatch() {
        let s = col(&[1, 1, 2, 2]);
        let t = Coloring::from_one_based(&[1, 1, 2], 2).unwrap();
        assert!(overlap_of(&s, &t).is_err());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(OverlapMatrix::new(2, vec![0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(OverlapMatrix::new(2, vec![0.5, 0.5, 0.1]).is_err());
        assert!(OverlapMatrix::new(2, vec![0.5, 0.5, 0.1, 0.1]).is_err());
    }

    #[test]
    fn json_and_csv_round_trip_bit_exact() {
        let e = vec![0.1, 0.2 / 3.0, 1.0 / 7.0, 1.0 - 0.1 - 0.2 / 3.0 - 1.0 / 7.0];
        let m = OverlapMatrix::new(2, e).unwrap();
        let j = OverlapMatrix::from_json(&m.to_json()).unwrap();
        let c = OverlapMatrix::from_csv(&m.to_csv()).unwrap();
        for (a, b) in m.entries().iter().zip(j.entries()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        for (a, b) in m.entries().iter().zip(c.entries()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn json_validates() {
        assert!(OverlapMatrix::from_json(r#"{"q":2,"entries":[1,1,1,1]}"#).is_err());
    }
}
