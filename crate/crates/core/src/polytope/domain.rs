use super::OverlapMatrix;
use crate::moments::{kappa, stability_constant};
use crate::warning::{Checked, Warning};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Domains of overlap matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainTag {
    /// Row and column sums 1/q.
    D,
    /// Row sums 1/q.
    S,
    /// Points of D with exactly `s` entries above the stability threshold.
    Stable { s: usize },
    /// Separable points of D with stability index below q.
    Tame,
}

impl DomainTag {
    pub fn contains(&self, a: &OverlapMatrix, k: u32, tol: f64) -> bool {
        match *self {
            DomainTag::D => is_in_d(a, tol),
            DomainTag::S => is_in_s(a, tol),
            DomainTag::Stable { s } => is_in_d(a, tol) && stability_index(a, k) == s,
            DomainTag::Tame => is_tame_matrix(a, k, tol).value,
        }
    }

    /// True when column sums are constrained as well as row sums.
    pub fn doubly_stochastic(&self) -> bool {
        !matches!(self, DomainTag::S)
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainTag::D => f.write_str("D"),
            DomainTag::S => f.write_str("S"),
            DomainTag::Stable { s } => write!(f, "D_{s}"),
            DomainTag::Tame => f.write_str("D_tame"),
        }
    }
}

fn sums_within(sums: &[f64], target: f64, tol: f64) -> bool {
    sums.iter().all(|s| (s - target).abs() <= tol)
}

pub fn is_in_s(a: &OverlapMatrix, tol: f64) -> bool {
    sums_within(&a.row_sums(), 1.0 / a.q() as f64, tol)
}

pub fn is_in_d(a: &OverlapMatrix, tol: f64) -> bool {
    let t = 1.0 / a.q() as f64;
    sums_within(&a.row_sums(), t, tol) && sums_within(&a.col_sums(), t, tol)
}

/// `q^{-1} (1.01/k)^{1/(k-1)}`
pub fn stability_threshold(q: usize, k: u32) -> f64 {
    stability_constant(k) / q as f64
}

/// Number of entries strictly above [`stability_threshold`].
pub fn stability_index(a: &OverlapMatrix, k: u32) -> usize {
    let t = stability_threshold(a.q(), k);
    a.entries().iter().filter(|&&x| x > t).count()
}

/// The open interval `(q^{-1} const, q^{-1}(1-κ))` separable overlaps avoid.
///
/// When `1 - κ` does not exceed the stability constant the interval is empty;
/// it is then clamped to `(q^{-1} const, q^{-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparabilityWindow {
    pub q: usize,
    pub lower: f64,
    pub upper: f64,
    pub kappa: f64,
    pub clamped: bool,
}

impl SeparabilityWindow {
    pub fn new(q: usize, k: u32) -> Self {
        let kap = kappa(q as f64, k);
        let cst = stability_constant(k);
        let clamped = 1.0 - kap <= cst;
        let qf = q as f64;
        let upper = if clamped { 1.0 / qf } else { (1.0 - kap) / qf };
        SeparabilityWindow { q, lower: cst / qf, upper, kappa: kap, clamped }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }

    /// Membership of the exact fraction `num / den`. The clamped upper end
    /// `1/q` is compared in integers.
    pub fn contains_fraction(&self, num: usize, den: usize) -> bool {
        let x = num as f64 / den as f64;
        if !(self.lower < x) {
            return false;
        }
        if self.clamped {
            (num as u128) * (self.q as u128) < den as u128
        } else {
            x < self.upper
        }
    }

    pub fn warnings(&self, k: u32) -> Vec<Warning> {
        if self.clamped {
            vec![Warning::SeparabilityWindowClamped { q: self.q, k, kappa: self.kappa }]
        } else {
            Vec::new()
        }
    }
}

pub fn separable_window(q: usize, k: u32) -> SeparabilityWindow {
    SeparabilityWindow::new(q, k)
}

pub fn is_separable_matrix(a: &OverlapMatrix, k: u32) -> Checked<bool> {
    let w = SeparabilityWindow::new(a.q(), k);
    let ok = a.entries().iter().all(|&x| !w.contains(x));
    Checked::with(ok, w.warnings(k))
}

pub fn is_tame_matrix(a: &OverlapMatrix, k: u32, tol: f64) -> Checked<bool> {
    is_separable_matrix(a, k).map(|sep| sep && stability_index(a, k) < a.q() && is_in_d(a, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{flat_overlap, scaled_identity, stable_overlap};

    const TOL: f64 = 1e-9;

    #[test]
    fn flat_overlap_is_tame() {
        for q in 2..20 {
            let a = flat_overlap(q);
            assert!(is_in_d(&a, TOL));
            assert_eq!(stability_index(&a, 3), 0);
            assert!(is_separable_matrix(&a, 3).value);
            assert!(is_tame_matrix(&a, 3, TOL).value);
        }
    }

    #[test]
    fn scaled_identity_is_not_tame() {
        let a = scaled_identity(5);
        assert!(is_in_d(&a, TOL));
        assert_eq!(stability_index(&a, 3), 5);
        assert!(!is_tame_matrix(&a, 3, TOL).value);
    }

    #[test]
    fn stable_overlap_3_3_is_not_separable() {
        let a = stable_overlap(3, 3);
        assert!(is_in_d(&a, TOL));
        let sep = is_separable_matrix(&a, 3);
        assert!(!sep.value);
        assert!(matches!(sep.warnings[0], Warning::SeparabilityWindowClamped { .. }));
        let w = SeparabilityWindow::new(3, 3);
        assert!((w.lower - 0.193_409_9).abs() < 1e-6);
        assert!(w.contains(8.0 / 27.0));
    }

    #[test]
    fn window_unclamped_at_large_q() {
        let w = SeparabilityWindow::new(1_000_000_000_000_000_000, 3);
        assert!(!w.clamped);
        assert!(w.upper < 1e-18);
    }

    #[test]
    fn s_excludes_column_constraint() {
        let a = OverlapMatrix::new(2, vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        assert!(is_in_s(&a, TOL));
        assert!(!is_in_d(&a, TOL));
        assert!(DomainTag::S.contains(&a, 3, TOL));
        assert!(!DomainTag::D.contains(&a, 3, TOL));
    }

    #[test]
    fn clamped_fraction_is_exact() {
        let w = SeparabilityWindow::new(3, 3);
        assert!(!w.contains_fraction(3, 9));
        assert!(w.contains_fraction(2, 7));
    }
}
