//! Entropy, energy and rate of overlap matrices, plus the scalar quantities
//! built from them.
//!
//! The rate of an overlap `a` is `F(a) = H(a) + E(a)` with
//! `H(a) = -Σ a_ij ln a_ij` and `E(a) = c ln(1 - 2q^{1-k} + ‖a‖_k^k)`.
//! Every function uses `0 ln 0 = 0`. The `*_log_domain` variants evaluate
//! `ln(1 + x)` through `ln_1p` so that tiny `q^{1-k}` does not cancel.

mod bounds;
mod hessian;
mod row_bound;
mod special;

pub use bounds::{threshold_bounds, ThresholdBounds};
pub use hessian::{critical_c, hessian_at_flat, FlatHessian};
pub use row_bound::{binary_entropy, entropy_row_bound, entropy_row_bound_pinned, scaled_row_entropy};
pub use special::{
    flat_overlap, flat_rate, s_stable_entropy, s_stable_overlap, s_stable_power_sum, s_stable_rate, scaled_identity,
    stable_overlap, stable_rate,
};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::polytope::OverlapMatrix;
use crate::warning::{Checked, Warning};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateValue {
    pub entropy: f64,
    pub energy: f64,
    pub rate: f64,
    pub log_domain: bool,
}

/// `x ln x` with `0 ln 0 = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

/// `-Σ x ln x` over a slice of nonnegative numbers.
pub fn entropy_of(xs: &[f64]) -> Result<f64> {
    if let Some(x) = xs.iter().find(|x| !(**x >= 0.0)) {
        return Err(Error::domain(format!("entropy of negative entry {x}")));
    }
    Ok(-compensated_sum(xs.iter().map(|&x| xlogx(x))))
}

pub fn entropy(a: &OverlapMatrix) -> Result<f64> {
    entropy_of(a.entries())
}

fn check_c(p: &ModelParams) -> Result<()> {
    if !(p.c >= 0.0) || !p.c.is_finite() {
        return Err(Error::param(format!("c must be finite and nonnegative, got {}", p.c)));
    }
    Ok(())
}

/// `c ln(1 - 2q^{1-k} + norm)` for `norm = ‖a‖_k^k`.
pub fn energy_from_power_sum(power_sum: f64, p: &ModelParams) -> Result<f64> {
    check_c(p)?;
    let arg = 1.0 - 2.0 * p.q_pow_1mk() + power_sum;
    if !(arg > 0.0) {
        return Err(Error::domain(format!("energy needs 1 - 2q^(1-k) + ||a||_k^k > 0, got {arg}")));
    }
    if p.c == 0.0 {
        return Ok(0.0);
    }
    Ok(p.c * arg.ln())
}

/// As [`energy_from_power_sum`], via `ln_1p(norm - 2q^{1-k})`.
pub fn energy_from_power_sum_log_domain(power_sum: f64, p: &ModelParams) -> Result<f64> {
    check_c(p)?;
    let x = power_sum - 2.0 * p.q_pow_1mk();
    if !(x > -1.0) {
        return Err(Error::domain(format!("energy needs 1 - 2q^(1-k) + ||a||_k^k > 0, got {}", 1.0 + x)));
    }
    if p.c == 0.0 {
        return Ok(0.0);
    }
    Ok(p.c * x.ln_1p())
}

fn check_q(a: &OverlapMatrix, p: &ModelParams) -> Result<()> {
    if a.q() != p.q as usize {
        return Err(Error::Mismatch(format!("matrix is {0}x{0} but q = {1}", a.q(), p.q)));
    }
    Ok(())
}

pub fn energy(a: &OverlapMatrix, p: &ModelParams) -> Result<f64> {
    check_q(a, p)?;
    energy_from_power_sum(a.power_sum(p.k), p)
}

pub fn rate(a: &OverlapMatrix, p: &ModelParams) -> Result<RateValue> {
    let entropy = entropy(a)?;
    let energy = energy(a, p)?;
    Ok(RateValue { entropy, energy, rate: entropy + energy, log_domain: false })
}

pub fn rate_log_domain(a: &OverlapMatrix, p: &ModelParams) -> Result<RateValue> {
    check_q(a, p)?;
    let entropy = entropy(a)?;
    let energy = energy_from_power_sum_log_domain(a.power_sum(p.k), p)?;
    Ok(RateValue { entropy, energy, rate: entropy + energy, log_domain: true })
}

/// Exponential growth rate of the expected number of colorings,
/// `ln q + c ln(1 - q^{1-k})`.
pub fn first_moment_exponent(p: &ModelParams) -> f64 {
    p.ln_q() + p.c * (-p.q_pow_1mk()).ln_1p()
}

/// The density where [`first_moment_exponent`] vanishes,
/// `-ln q / ln(1 - q^{1-k})`.
pub fn first_moment_root(q: u32, k: u32) -> f64 {
    let q = q as f64;
    -q.ln() / (-q.powi(1 - k as i32)).ln_1p()
}

/// `κ = q^{1-k} (ln q)^{20}`, evaluated in logs so any finite `q ≥ 1` works.
pub fn kappa(q: f64, k: u32) -> f64 {
    let lq = q.ln();
    if lq <= 0.0 {
        return 0.0;
    }
    ((1.0 - k as f64) * lq + 20.0 * lq.ln()).exp()
}

/// [`kappa`] with a warning when the separability window it defines is empty.
pub fn kappa_checked(q: f64, k: u32) -> Checked<f64> {
    let kap = kappa(q, k);
    if 1.0 - kap <= stability_constant(k) {
        Checked::with(kap, vec![Warning::KappaOutOfRange { q, k, kappa: kap }])
    } else {
        Checked::clean(kap)
    }
}

/// `(1.01/k)^{1/(k-1)}`
pub fn stability_constant(k: u32) -> f64 {
    (1.01 / k as f64).powf(1.0 / (k as f64 - 1.0))
}

/// `φ(x) = (1+x) ln(1+x) - x` for `x ≥ -1`.
pub fn chernoff_phi(x: f64) -> Result<f64> {
    if !(x >= -1.0) {
        return Err(Error::domain(format!("chernoff_phi needs x >= -1, got {x}")));
    }
    Ok(xlogx(1.0 + x) - x)
}

/// `√2 e`, the default prefactor of [`separable_window_check`].
pub const WINDOW_PREFACTOR: f64 = std::f64::consts::SQRT_2 * std::f64::consts::E;

/// Whether `prefactor / q^{(1 - k s^{k-1})/2} < 1 - s`, compared in logs.
/// `prefactor` defaults to `√2 e`.
pub fn separable_window_check(q: f64, k: u32, s: f64, prefactor: Option<f64>) -> bool {
    separable_window_check_ln(q.ln(), k, s, prefactor)
}

/// [`separable_window_check`] taking `ln q`, for `q` beyond `f64` range.
pub fn separable_window_check_ln(ln_q: f64, k: u32, s: f64, prefactor: Option<f64>) -> bool {
    if !(s > 0.0 && s < 1.0) {
        return false;
    }
    let pre = prefactor.unwrap_or(WINDOW_PREFACTOR);
    if !(pre > 0.0) {
        return false;
    }
    let lhs = pre.ln() - 0.5 * (1.0 - k as f64 * s.powi(k as i32 - 1)) * ln_q;
    lhs < (-s).ln_1p()
}
