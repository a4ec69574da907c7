//! Special overlap matrices and closed forms of their rates.

use super::{energy_from_power_sum_log_domain, xlogx, RateValue};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::polytope::OverlapMatrix;

/// The flat overlap `ā`, all entries `q^{-2}`.
pub fn flat_overlap(q: usize) -> OverlapMatrix {
    OverlapMatrix::from_raw(q, vec![1.0 / (q * q) as f64; q * q])
}

/// `q^{-1} id`
pub fn scaled_identity(q: usize) -> OverlapMatrix {
    let d = 1.0 / q as f64;
    OverlapMatrix::from_raw(q, (0..q * q).map(|idx| if idx / q == idx % q { d } else { 0.0 }).collect())
}

/// `ā(s)`: `1/q` on the first `s` diagonal entries and `(q(q-s))^{-1}` on
/// the lower-right `(q-s)×(q-s)` block.
pub fn s_stable_overlap(q: usize, s: usize) -> Result<OverlapMatrix> {
    if s >= q {
        return Err(Error::param(format!("s = {s} must be below q = {q}")));
    }
    let qf = q as f64;
    let d = 1.0 / qf;
    let b = 1.0 / (qf * (q - s) as f64);
    let entries = (0..q * q)
        .map(|idx| {
            let (i, j) = (idx / q, idx % q);
            if i < s || j < s {
                if i == j {
                    d
                } else {
                    0.0
                }
            } else {
                b
            }
        })
        .collect();
    Ok(OverlapMatrix::from_raw(q, entries))
}

fn stable_entries(q: usize, k: u32) -> (f64, f64) {
    let qf = q as f64;
    let qmk = qf.powi(-(k as i32));
    (1.0 / qf - qmk, qmk / (qf - 1.0))
}

/// `(q^{-1} - q^{-k}) id + q^{-k} (q-1)^{-1} (q² ā - id)`
pub fn stable_overlap(q: usize, k: u32) -> OverlapMatrix {
    let (d, o) = stable_entries(q, k);
    OverlapMatrix::from_raw(q, (0..q * q).map(|idx| if idx / q == idx % q { d } else { o }).collect())
}

/// `H(ā(s)) = (s/q) ln q + ((q-s)/q) ln(q(q-s))`
pub fn s_stable_entropy(q: usize, s: usize) -> f64 {
    let qf = q as f64;
    let r = (q - s) as f64;
    (s as f64 / qf) * qf.ln() + (r / qf) * (qf * r).ln()
}

/// `‖ā(s)‖_k^k = s q^{-k} + q^{-k} (q-s)^{2-k}`
pub fn s_stable_power_sum(q: usize, s: usize, k: u32) -> f64 {
    let qf = q as f64;
    let qmk = qf.powi(-(k as i32));
    s as f64 * qmk + qmk * ((q - s) as f64).powi(2 - k as i32)
}

/// Rate of `ā(s)` from its closed forms, energy through `ln_1p`.
pub fn s_stable_rate(p: &ModelParams, s: usize) -> Result<RateValue> {
    let q = p.q as usize;
    if s >= q {
        return Err(Error::param(format!("s = {s} must be below q = {q}")));
    }
    let entropy = s_stable_entropy(q, s);
    let energy = energy_from_power_sum_log_domain(s_stable_power_sum(q, s, p.k), p)?;
    Ok(RateValue { entropy, energy, rate: entropy + energy, log_domain: true })
}

/// `F(ā) = 2 (ln q + c ln(1 - q^{1-k}))`, through `ln_1p`.
pub fn flat_rate(p: &ModelParams) -> RateValue {
    let entropy = 2.0 * p.ln_q();
    let energy = if p.c == 0.0 { 0.0 } else { 2.0 * p.c * (-p.q_pow_1mk()).ln_1p() };
    RateValue { entropy, energy, rate: entropy + energy, log_domain: true }
}

/// Rate of [`stable_overlap`] from its two distinct entry values; no q×q
/// matrix is formed.
pub fn stable_rate(p: &ModelParams) -> Result<RateValue> {
    let q = p.q as usize;
    let (d, o) = stable_entries(q, p.k);
    let qf = q as f64;
    let off = qf * (qf - 1.0);
    let entropy = -qf * xlogx(d) - off * xlogx(o);
    let k = p.k as i32;
    let norm = qf * d.powi(k) + off * o.powi(k);
    let energy = energy_from_power_sum_log_domain(norm, p)?;
    Ok(RateValue { entropy, energy, rate: entropy + energy, log_domain: true })
}
