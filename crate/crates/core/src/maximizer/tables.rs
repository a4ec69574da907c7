use crate::error::{Error, Result};
use crate::moments::{flat_rate, s_stable_entropy, s_stable_power_sum, stable_rate};
use crate::params::ModelParams;
use crate::warning::{Checked, Warning};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub s: usize,
    /// `F(ā(s))`
    pub f_stable: f64,
    /// `F(ā)`
    pub f_flat: f64,
    /// `q^{0.999-k}`
    pub slack: f64,
    /// `F(ā) - F(ā(s)) - q^{0.999-k}`
    pub margin: f64,
    pub positive: bool,
}

fn slack(p: &ModelParams) -> f64 {
    (p.q as f64).powf(0.999 - p.k as f64)
}

/// One row per `1 ≤ s < q`.
///
/// The energy difference is formed as
/// `c ln(1 + (x̄ - x_s)/(1 + x_s))` with `x = ‖·‖_k^k - 2q^{1-k}` and
/// `x̄ - x_s = q^{2-2k} - s q^{-k} - q^{-k}(q-s)^{2-k}`, so nothing cancels
/// even when `c` is of order `q^{k-1} ln q`.
pub fn s_stable_gap_table(p: &ModelParams) -> Result<Vec<GapRow>> {
    let q = p.q as usize;
    let qf = q as f64;
    let k = p.k as i32;
    let flat = flat_rate(p);
    let h_flat = 2.0 * qf.ln();
    let qmk = qf.powi(-k);
    let two_q1k = 2.0 * p.q_pow_1mk();
    let sl = slack(p);
    (1..q)
        .map(|s| {
            let h_s = s_stable_entropy(q, s);
            let x_s = s_stable_power_sum(q, s, p.k) - two_q1k;
            if !(x_s > -1.0) {
                return Err(Error::domain(format!("energy argument of abar({s}) is not positive")));
            }
            let diff_x = qf.powi(2 - 2 * k) - s as f64 * qmk - qmk * ((q - s) as f64).powi(2 - k);
            let energy_gap = if p.c == 0.0 { 0.0 } else { p.c * (diff_x / (1.0 + x_s)).ln_1p() };
            let gap = (h_flat - h_s) + energy_gap;
            let f_stable = h_s + if p.c == 0.0 { 0.0 } else { p.c * x_s.ln_1p() };
            let margin = gap - sl;
            Ok(GapRow { s, f_stable, f_flat: flat.rate, slack: sl, margin, positive: margin > 0.0 })
        })
        .collect()
}

/// [`s_stable_gap_table`] evaluated with plain `ln` and direct subtraction.
/// Only trustworthy while `c q^{1-k}` and `q` are moderate.
pub fn s_stable_gap_table_native(p: &ModelParams) -> Result<Vec<GapRow>> {
    let q = p.q as usize;
    let qf = q as f64;
    let k = p.k as i32;
    let base = 1.0 - 2.0 * qf.powi(1 - k);
    let f_flat = 2.0 * qf.ln() + p.c * (base + qf.powi(2 - 2 * k)).ln();
    let sl = slack(p);
    (1..q)
        .map(|s| {
            let arg = base + s_stable_power_sum(q, s, p.k);
            if !(arg > 0.0) {
                return Err(Error::domain(format!("energy argument {arg} of abar({s}) is not positive")));
            }
            let f_stable = s_stable_entropy(q, s) + p.c * arg.ln();
            let margin = f_flat - f_stable - sl;
            Ok(GapRow { s, f_stable, f_flat, slack: sl, margin, positive: margin > 0.0 })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessRow {
    pub q: u32,
    pub gamma: f64,
    pub c: f64,
    pub f_stable: f64,
    pub f_flat: f64,
    /// `F(a_stable) - F(ā)`
    pub difference: f64,
    pub positive: bool,
}

/// `F(a_stable) - F(ā)` at `c = (q^{k-1} - 1/2) ln q - γ` for each `γ`.
/// Densities below zero are clamped to zero with a warning.
pub fn condensation_witness(q: u32, k: u32, gammas: &[f64]) -> Result<Checked<Vec<WitnessRow>>> {
    ModelParams::new(q, k, 0.0)?;
    let qf = q as f64;
    let upper = (qf.powi(k as i32 - 1) - 0.5) * qf.ln();
    let mut warnings = Vec::new();
    let mut rows = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::param(format!("gamma must be positive and finite, got {gamma}")));
        }
        let mut c = upper - gamma;
        if c < 0.0 {
            warnings.push(Warning::ClampedDensity { gamma });
            c = 0.0;
        }
        let p = ModelParams::new(q, k, c)?;
        let st = stable_rate(&p)?;
        let fl = flat_rate(&p);
        let difference = (st.entropy - fl.entropy) + (st.energy - fl.energy);
        rows.push(WitnessRow {
            q,
            gamma,
            c,
            f_stable: st.rate,
            f_flat: fl.rate,
            difference,
            positive: difference > 0.0,
        });
    }
    Ok(Checked::with(rows, warnings))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondensationScan {
    pub k: u32,
    pub rows: Vec<WitnessRow>,
    /// First `(q, γ)` in scan order with a positive difference.
    pub first_positive: Option<(u32, f64)>,
    pub warnings: Vec<Warning>,
}

/// [`condensation_witness`] over several `q`.
pub fn condensation_scan(qs: &[u32], k: u32, gammas: &[f64]) -> Result<CondensationScan> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &q in qs {
        let w = condensation_witness(q, k, gammas)?;
        rows.extend(w.value);
        warnings.extend(w.warnings);
    }
    let first_positive = rows.iter().find(|r| r.positive).map(|r| (r.q, r.gamma));
    Ok(CondensationScan { k, rows, first_positive, warnings })
}
