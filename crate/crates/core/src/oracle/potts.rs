use super::check_budget;
use super::enumerate::closing_edges;
use crate::error::{Error, Result};
use crate::simulator::Hypergraph;
use rayon::prelude::*;
use serde::Serialize;

/// Number of maps `[n] → [q]` with each count of monochromatic edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyHistogram {
    pub counts: Vec<u64>,
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.collect();
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + v.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

impl EnergyHistogram {
    /// `ln Σ_τ exp(-β E_τ)`
    pub fn ln_partition(&self, beta: f64) -> f64 {
        self.ln_partition_from(beta, 0)
    }

    /// Log of the part of the sum with at least `min_energy` monochromatic
    /// edges; `-∞` if empty.
    pub fn ln_partition_from(&self, beta: f64, min_energy: usize) -> f64 {
        log_sum_exp(
            self.counts
                .iter()
                .enumerate()
                .skip(min_energy)
                .filter(|(_, &c)| c > 0)
                .map(|(e, &c)| (c as f64).ln() - beta * e as f64),
        )
    }

    /// Maps with no monochromatic edge.
    pub fn proper(&self) -> u64 {
        self.counts.first().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

struct Walk<'a> {
    h: &'a Hypergraph,
    q: u32,
    closing: &'a [Vec<u32>],
    assign: Vec<u32>,
    hist: Vec<u64>,
}

impl Walk<'_> {
    fn closed(&self, v: usize) -> usize {
        let c = self.assign[v];
        self.closing[v]
            .iter()
            .filter(|&&id| self.h.edge(id as usize).iter().all(|&u| self.assign[u as usize] == c))
            .count()
    }

    fn visit(&mut self, v: usize, energy: usize) {
        if v == self.assign.len() {
            self.hist[energy] += 1;
            return;
        }
        for c in 0..self.q {
            self.assign[v] = c;
            let e = energy + self.closed(v);
            self.visit(v + 1, e);
        }
    }
}

/// Exhaustive histogram of monochromatic edge counts over all `q^n` maps.
pub fn energy_histogram(h: &Hypergraph, q: usize, budget: u64) -> Result<EnergyHistogram> {
    if q == 0 {
        return Err(Error::param("q must be positive"));
    }
    check_budget(q, h.n(), budget)?;
    let closing = closing_edges(h);
    let n = h.n();
    let m = h.m();
    let shard = |first: Option<u32>| {
        let mut w = Walk { h, q: q as u32, closing: &closing, assign: vec![0; n], hist: vec![0; m + 1] };
        match first {
            None => w.visit(0, 0),
            Some(c) => {
                w.assign[0] = c;
                let e = w.closed(0);
                w.visit(1, e);
            }
        }
        w.hist
    };
    let parts: Vec<Vec<u64>> =
        if n == 0 { vec![shard(None)] } else { (0..q as u32).into_par_iter().map(|c| shard(Some(c))).collect() };
    let mut counts = vec![0u64; m + 1];
    for p in parts {
        for (a, b) in counts.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(EnergyHistogram { counts })
}

/// `ln Z_{q,β}(H) = ln Σ_τ exp(-β E_τ(H))`, exact up to the final
/// log-sum-exp.
pub fn partition_function(h: &Hypergraph, q: usize, beta: f64, budget: u64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::param(format!("beta must be nonnegative, got {beta}")));
    }
    Ok(energy_histogram(h, q, budget)?.ln_partition(beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let h = Hypergraph::from_one_based(3, 3, &[vec![1, 2, 3]]).unwrap();
        let hist = energy_histogram(&h, 2, 1 << 20).unwrap();
        assert_eq!(hist.counts, vec![6, 2]);
        for beta in [0.0, 1.0, 10.0] {
            let z = partition_function(&h, 2, beta, 1 << 20).unwrap().exp();
            assert!((z - (6.0 + 2.0 * (-beta).exp())).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_zero_counts_all_maps() {
        let h = Hypergraph::from_one_based(5, 3, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let ln_z = partition_function(&h, 3, 0.0, 1 << 20).unwrap();
        assert!((ln_z - 5.0 * 3f64.ln()).abs() < 1e-12);
        assert!(partition_function(&h, 3, -1.0, 1 << 20).is_err());
    }

    #[test]
    fn excess_vanishes_at_large_beta() {
        let h = Hypergraph::from_one_based(4, 3, &[vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let hist = energy_histogram(&h, 2, 1 << 20).unwrap();
        assert_eq!(hist.total(), 16);
        assert!(hist.ln_partition_from(1000.0, 1) < -900.0);
        assert_eq!(hist.ln_partition_from(0.0, 10), f64::NEG_INFINITY);
    }
}
