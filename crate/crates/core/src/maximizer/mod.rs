//! Maximization of the rate over overlap domains, and closed-form tables
//! comparing special overlaps against the flat one.

mod ascent;
mod tables;

pub use ascent::{gradient, maximize, projected_direction, MaximizationReport, MaximizeConfig, PerStability};
pub use tables::{
    condensation_scan, condensation_witness, s_stable_gap_table, s_stable_gap_table_native, CondensationScan, GapRow,
    WitnessRow,
};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::polytope::OverlapMatrix;

/// `(∂/∂a_ix - ∂/∂a_iy) F(a)
///  = ln(a_iy / a_ix) + c k (a_ix^{k-1} - a_iy^{k-1}) / (1 - 2q^{1-k} + ‖a‖_k^k)`.
pub fn directional_derivative(a: &OverlapMatrix, i: usize, x: usize, y: usize, p: &ModelParams) -> Result<f64> {
    let q = a.q();
    if i >= q || x >= q || y >= q {
        return Err(Error::param(format!("index out of range for q = {q}")));
    }
    let (ax, ay) = (a.get(i, x), a.get(i, y));
    if !(ax > 0.0 && ay > 0.0) {
        return Err(Error::domain(format!("directional derivative needs positive entries, got {ax} and {ay}")));
    }
    let k = p.k as i32;
    let denom = 1.0 - 2.0 * p.q_pow_1mk() + a.power_sum(p.k);
    if !(denom > 0.0) {
        return Err(Error::domain(format!("1 - 2q^(1-k) + ||a||_k^k = {denom} is not positive")));
    }
    Ok((ay / ax).ln() + p.c * p.k as f64 * (ax.powi(k - 1) - ay.powi(k - 1)) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{flat_overlap, rate};
    use crate::polytope::random_point_in_s;
    use crate::rng::from_seed;

    #[test]
    fn symmetric_cases_vanish() {
        let p = ModelParams::new(4, 3, 7.0).unwrap();
        let a = flat_overlap(4);
        for (i, x, y) in [(0, 1, 2), (3, 0, 3), (2, 2, 2)] {
            assert_eq!(directional_derivative(&a, i, x, y, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn zero_entry_is_rejected() {
        let p = ModelParams::new(2, 3, 1.0).unwrap();
        let a = OverlapMatrix::new(2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(matches!(directional_derivative(&a, 0, 0, 1, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn matches_mass_transfer_difference() {
        let mut rng = from_seed(5);
        for q in [3usize, 5] {
            let p = ModelParams::new(q as u32, 3, 3.0).unwrap();
            for _ in 0..20 {
                let a = random_point_in_s(q, &mut rng).unwrap();
                let (i, x, y) = (1, 0, 2);
                let eps = 1e-7;
                let shift = |d: f64| {
                    let mut e = a.entries().to_vec();
                    e[i * q + x] += d;
                    e[i * q + y] -= d;
                    rate(&OverlapMatrix::new(q, e).unwrap(), &p).unwrap().rate
                };
                let fd = (shift(eps) - shift(-eps)) / (2.0 * eps);
                let exact = directional_derivative(&a, i, x, y, &p).unwrap();
                assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1e-3), "{fd} vs {exact}");
            }
        }
    }
}
