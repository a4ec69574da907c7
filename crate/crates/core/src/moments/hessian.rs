use crate::params::ModelParams;
use nalgebra::{DMatrix, SymmetricEigen};

/// Hessian of `F ∘ L` at the flat overlap, where `L` parametrizes D by all
/// entries except `(q, q)`.
///
/// In these coordinates the Hessian is `-q² (1 - c/c_crit) (id + 1)` with
/// `c_crit = q^{2(k-1)} (1 - q^{1-k})² / (k (k-1))`; `1` is the all-ones
/// matrix of size `q² - 1`.
#[derive(Debug, Clone)]
pub struct FlatHessian {
    pub dim: usize,
    /// Coefficient of `id + 1`.
    pub scale: f64,
    pub critical_c: f64,
    pub negative_definite: bool,
    pub matrix: DMatrix<f64>,
}

impl FlatHessian {
    /// Closed-form spectrum: `scale·(q²)` once and `scale` with multiplicity
    /// `q² - 2`, in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let big = self.scale * (self.dim + 1) as f64;
        let mut v = vec![self.scale; self.dim - 1];
        v.push(big);
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(f64::NAN)
    }

    /// Spectrum of [`FlatHessian::matrix`] from a numerical eigensolver.
    pub fn numeric_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Density at which the flat overlap stops being a strict local maximum of
/// F over D.
pub fn critical_c(q: u32, k: u32) -> f64 {
    let qf = q as f64;
    let k = k as i32;
    let t = -qf.powi(1 - k);
    qf.powi(2 * (k - 1)) * t.ln_1p().exp().powi(2) / (k * (k - 1)) as f64
}

pub fn hessian_at_flat(p: &ModelParams) -> FlatHessian {
    let q = p.q as usize;
    let dim = q * q - 1;
    let crit = critical_c(p.q, p.k);
    let q2 = (q * q) as f64;
    let scale = -q2 * (1.0 - p.c / crit);
    let matrix = DMatrix::from_fn(dim, dim, |i, j| if i == j { 2.0 * scale } else { scale });
    FlatHessian { dim, scale, critical_c: crit, negative_definite: p.c < crit, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_value_q3_k3() {
        assert!((critical_c(3, 3) - 32.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_at_zero_density() {
        let h = hessian_at_flat(&ModelParams::new(3, 3, 0.0).unwrap());
        let ev = h.eigenvalues();
        assert_eq!(ev.len(), 8);
        assert_eq!(ev[0], -81.0);
        assert!(ev[1..].iter().all(|&x| x == -9.0));
        let num = h.numeric_eigenvalues();
        for (a, b) in ev.iter().zip(&num) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn q10_k3_at_229() {
        let h = hessian_at_flat(&ModelParams::new(10, 3, 229.0).unwrap());
        assert!(h.negative_definite);
        assert!(h.max_eigenvalue() < 0.0);
        assert!((h.critical_c - 1633.5).abs() < 1e-9);
    }

    #[test]
    fn symmetric_and_sign_change() {
        let p = ModelParams::new(4, 3, 1.0).unwrap();
        let h = hessian_at_flat(&p);
        assert_eq!(h.matrix, h.matrix.transpose());
        let c = critical_c(4, 3);
        let below = hessian_at_flat(&ModelParams::new(4, 3, c * 0.999).unwrap());
        let above = hessian_at_flat(&ModelParams::new(4, 3, c * 1.001).unwrap());
        assert!(below.max_eigenvalue() < 0.0 && below.negative_definite);
        assert!(above.max_eigenvalue() > 0.0 && !above.negative_definite);
    }
}
