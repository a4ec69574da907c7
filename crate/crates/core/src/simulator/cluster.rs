use super::{is_proper, Coloring, CoreDecomposition, Hypergraph};
use crate::error::{Error, Result};
use crate::moments::stability_constant;
use crate::polytope::overlap_counts;
use crate::polytope::{separable_window, SeparabilityWindow};
use crate::warning::{Checked, Warning};
use serde::Serialize;
use std::f64::consts::LN_2;

/// Whether every diagonal overlap `a_ii(σ, τ)` exceeds
/// `q^{-1} (1.01/k)^{1/(k-1)}`.
pub fn in_cluster(sigma: &Coloring, tau: &Coloring, k: u32) -> Result<Checked<bool>> {
    let counts = overlap_counts(sigma, tau)?;
    let q = sigma.q();
    let n = sigma.n() as f64;
    let threshold = stability_constant(k) / q as f64;
    let inside = (0..q).all(|i| counts[i * q + i] as f64 / n > threshold);
    let warnings = if tau.is_balanced() { Vec::new() } else { vec![Warning::Unbalanced { n: tau.n(), q }] };
    Ok(Checked::with(inside, warnings))
}

/// `(|F1 \ (F2 ∪ AW)| ln 2 + |F2 ∪ AW| ln q) / n`
pub fn cluster_size_log_bound(d: &CoreDecomposition, q: usize, n: usize) -> f64 {
    let mut wide = vec![false; d.n];
    for &v in d.f2.iter().chain(&d.aw) {
        wide[v as usize] = true;
    }
    let narrow = d.f1.iter().filter(|&&v| !wide[v as usize]).count();
    let wide = wide.iter().filter(|&&b| b).count();
    cluster_size_log_bound_from_counts(narrow, wide, q, n)
}

pub fn cluster_size_log_bound_from_counts(two_way: usize, q_way: usize, q: usize, n: usize) -> f64 {
    (two_way as f64 * LN_2 + q_way as f64 * (q as f64).ln()) / n as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub tau: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejection {
    pub tau: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityReport {
    pub window: SeparabilityWindow,
    pub violations: Vec<Violation>,
    pub rejected: Vec<Rejection>,
    pub warnings: Vec<Warning>,
}

impl SeparabilityReport {
    pub fn is_separable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every `(τ, i, j)` with `a_ij(σ, τ)` inside the separability window.
/// Colorings that are not proper and balanced are rejected, not scanned.
pub fn separability_scan(h: &Hypergraph, sigma: &Coloring, taus: &[Coloring]) -> Result<SeparabilityReport> {
    if h.n() != sigma.n() {
        return Err(Error::Mismatch(format!("hypergraph has n = {} but coloring has n = {}", h.n(), sigma.n())));
    }
    let q = sigma.q();
    let n = sigma.n();
    let k = h.k() as u32;
    let window = separable_window(q, k);
    let mut violations = Vec::new();
    let mut rejected = Vec::new();
    for (t, tau) in taus.iter().enumerate() {
        if tau.n() != n || tau.q() != q {
            rejected.push(Rejection { tau: t, reason: "dimension mismatch".into() });
            continue;
        }
        if !is_proper(h, tau) {
            rejected.push(Rejection { tau: t, reason: "not a proper coloring".into() });
            continue;
        }
        if !tau.is_balanced() {
            rejected.push(Rejection { tau: t, reason: "not balanced".into() });
            continue;
        }
        let counts = overlap_counts(sigma, tau)?;
        for (idx, &c) in counts.iter().enumerate() {
            if window.contains_fraction(c, n) {
                violations.push(Violation { tau: t, i: idx / q, j: idx % q, value: c as f64 / n as f64 });
            }
        }
    }
    let warnings = window.warnings(k);
    Ok(SeparabilityReport { window, violations, rejected, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[u32], q: usize) -> Coloring {
        Coloring::from_one_based(v, q).unwrap()
    }

    #[test]
    fn cluster_examples() {
        let s = col(&[1, 1, 2, 2], 2);
        assert!(in_cluster(&s, &s, 3).unwrap().value);
        assert!(!in_cluster(&s, &col(&[2, 2, 1, 1], 2), 3).unwrap().value);

        // 80 of 100 vertices keep their color in each class.
        let sigma: Vec<u32> = (0..200).map(|v| if v < 100 { 1 } else { 2 }).collect();
        let tau: Vec<u32> = (0..200).map(|v| if (v % 100) < 80 { sigma[v] } else { 3 - sigma[v] }).collect();
        let r = in_cluster(&col(&sigma, 2), &col(&tau, 2), 3).unwrap();
        assert!(r.value);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(cluster_size_log_bound_from_counts(0, 0, 3, 10), 0.0);
        assert!((cluster_size_log_bound_from_counts(10, 0, 3, 10) - LN_2).abs() < 1e-15);
        let b = cluster_size_log_bound_from_counts(30, 10, 3, 1000);
        assert!((b - 0.031_780_54).abs() < 1e-8);
    }

    #[test]
    fn scan_examples() {
        let h = Hypergraph::empty(6, 3);
        let s = Coloring::round_robin(6, 2).unwrap();
        let r = separability_scan(&h, &s, std::slice::from_ref(&s)).unwrap();
        assert!(r.is_separable());
        assert!(!r.window.clamped);
        assert!(separability_scan(&h, &s, &[]).unwrap().is_separable());

        let h = Hypergraph::from_one_based(6, 3, &[vec![1, 2, 3]]).unwrap();
        let bad = col(&[1, 1, 1, 2, 2, 2], 2);
        let r = separability_scan(&h, &s, &[bad]).unwrap();
        assert_eq!(r.rejected.len(), 1);
    }
}
