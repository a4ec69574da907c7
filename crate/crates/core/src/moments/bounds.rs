use crate::error::{Error, Result};
use crate::warning::{Checked, Warning};
use serde::Serialize;
use std::f64::consts::LN_2;

/// Bounds on the q-colorability threshold of random k-uniform hypergraphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdBounds {
    pub q: u32,
    pub k: u32,
    /// `(q^{k-1} - 1) ln q - 1`; the additional `-ε_{q,k}` has no closed form
    /// and is left out.
    pub classical_lower: f64,
    /// `(q^{k-1} - 1/2) ln q`
    pub upper: f64,
    /// `upper - ln 2 - 1.01 ln q / q`
    pub new_lower: f64,
    pub c_range_lo: f64,
    pub c_range_hi: f64,
    pub epsilon_omitted: bool,
}

pub fn threshold_bounds(q: u32, k: u32) -> Result<Checked<ThresholdBounds>> {
    if q < 3 || k < 3 {
        return Err(Error::param(format!("threshold bounds need q >= 3 and k >= 3, got q={q}, k={k}")));
    }
    let qf = q as f64;
    let lq = qf.ln();
    let qk1 = qf.powi(k as i32 - 1);
    let upper = (qk1 - 0.5) * lq;
    let new_lower = upper - LN_2 - 1.01 * lq / qf;
    let b = ThresholdBounds {
        q,
        k,
        classical_lower: (qk1 - 1.0) * lq - 1.0,
        upper,
        new_lower,
        c_range_lo: upper - 2.0,
        c_range_hi: new_lower,
        epsilon_omitted: true,
    };
    Ok(Checked::with(b, vec![Warning::EpsilonOmitted { q, k }]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q10_k3() {
        let b = threshold_bounds(10, 3).unwrap();
        assert!((b.value.upper - 229.107_22).abs() < 1e-5);
        assert!((b.value.new_lower - 228.181_51).abs() < 1e-5);
        assert!((b.value.classical_lower - 226.955_92).abs() < 1e-5);
        assert_eq!(b.warnings, vec![Warning::EpsilonOmitted { q: 10, k: 3 }]);
    }

    #[test]
    fn ordering() {
        for q in 3..40 {
            for k in 3..8 {
                let b = threshold_bounds(q, k).unwrap().value;
                assert!(b.new_lower <= b.upper);
                assert!(b.c_range_lo <= b.c_range_hi);
            }
        }
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(threshold_bounds(2, 3).is_err());
        assert!(threshold_bounds(3, 2).is_err());
    }
}
