use super::{Coloring, Hypergraph};
use crate::error::{Error, Result};
use crate::params::{binomial_f64, binomial_u128, ModelParams};
use crate::warning::{Checked, Warning};
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use std::collections::HashSet;

/// Up to this many possible edges the sampler indexes k-sets directly
/// instead of rejecting duplicates.
pub const DENSE_LIMIT: u128 = 2_000_000;

/// The k-set of colex rank `r` (combinatorial number system).
fn unrank(mut r: u128, n: usize, k: usize) -> Vec<u32> {
    let mut out = vec![0u32; k];
    let mut c = n;
    for i in (1..=k).rev() {
        c -= 1;
        while binomial_u128(c as u64, i as u64).unwrap_or(u128::MAX) > r {
            c -= 1;
        }
        r -= binomial_u128(c as u64, i as u64).unwrap_or(0);
        out[i - 1] = c as u32;
    }
    out
}

fn random_kset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<u32> {
    let mut e: Vec<u32> = rand::seq::index::sample(rng, n, k).into_iter().map(|v| v as u32).collect();
    e.sort_unstable();
    e
}

fn finish(n: usize, k: usize, mut edges: Vec<Vec<u32>>) -> Hypergraph {
    edges.sort_unstable();
    Hypergraph::from_sorted(n, k, edges.concat())
}

/// A uniformly random hypergraph with exactly `m` distinct edges.
pub fn sample_hypergraph<R: Rng + ?Sized>(n: usize, k: usize, m: usize, rng: &mut R) -> Result<Hypergraph> {
    if k == 0 || k > n {
        return Err(Error::param(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let total = binomial_u128(n as u64, k as u64).unwrap_or(u128::MAX);
    if m as u128 > total {
        return Err(Error::param(format!("m = {m} exceeds C({n},{k}) = {total}")));
    }
    if total <= DENSE_LIMIT {
        let edges =
            rand::seq::index::sample(rng, total as usize, m).into_iter().map(|r| unrank(r as u128, n, k)).collect();
        return Ok(finish(n, k, edges));
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let e = random_kset(n, k, rng);
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Ok(finish(n, k, edges))
}

fn check_coloring(p: &ModelParams, sigma: &Coloring) -> Result<()> {
    if sigma.q() != p.q as usize {
        return Err(Error::Mismatch(format!("coloring uses q = {} but parameters say {}", sigma.q(), p.q)));
    }
    if let Some(n) = p.n {
        if n as usize != sigma.n() {
            return Err(Error::Mismatch(format!("coloring has n = {} but parameters say {n}", sigma.n())));
        }
    }
    if sigma.n() < p.k as usize {
        return Err(Error::param(format!("n = {} is smaller than k = {}", sigma.n(), p.k)));
    }
    Ok(())
}

/// `cn / (C(n,k) - Σ_j C(|V_j|, k))`, the inclusion probability of every
/// non-monochromatic k-set in the planted model.
pub fn planted_edge_probability(p: &ModelParams, sigma: &Coloring) -> Result<f64> {
    check_coloring(p, sigma)?;
    let n = sigma.n() as u64;
    let k = p.k as u64;
    let mono: f64 = sigma.class_sizes().iter().map(|&s| binomial_f64(s as u64, k)).sum();
    let denom = binomial_f64(n, k) - mono;
    if !(denom > 0.0) {
        return Err(Error::domain("every k-set is monochromatic under the planted coloring"));
    }
    let prob = p.c * n as f64 / denom;
    if prob > 1.0 {
        return Err(Error::domain(format!("planted edge probability {prob} exceeds 1; density too high for n = {n}")));
    }
    Ok(prob)
}

fn monochromatic(e: &[u32], sigma: &Coloring) -> bool {
    let c = sigma.color(e[0] as usize);
    e[1..].iter().all(|&v| sigma.color(v as usize) == c)
}

/// Planted model: every k-set that `sigma` does not make monochromatic is
/// an edge independently with [`planted_edge_probability`].
///
/// The edge count is drawn from the binomial law first, then that many
/// distinct non-monochromatic k-sets are chosen uniformly.
pub fn sample_planted<R: Rng + ?Sized>(p: &ModelParams, sigma: &Coloring, rng: &mut R) -> Result<Checked<Hypergraph>> {
    let prob = planted_edge_probability(p, sigma)?;
    let n = sigma.n();
    let k = p.k as usize;
    let mut warnings = Vec::new();
    if !sigma.is_balanced() {
        warnings.push(Warning::Unbalanced { n, q: sigma.q() });
    }
    let total = binomial_u128(n as u64, k as u64).ok_or_else(|| Error::param("C(n,k) overflows"))?;
    let mono: u128 = sigma.class_sizes().iter().map(|&s| binomial_u128(s as u64, k as u64).unwrap_or(0)).sum();
    let available = total - mono;
    let count = if prob == 0.0 {
        0
    } else {
        let n_trials = u64::try_from(available).map_err(|_| Error::param("too many possible edges"))?;
        Binomial::new(n_trials, prob).map_err(|e| Error::domain(e.to_string()))?.sample(rng) as usize
    };

    let edges: Vec<Vec<u32>> = if total <= DENSE_LIMIT {
        let pool: Vec<Vec<u32>> = (0..total).map(|r| unrank(r, n, k)).filter(|e| !monochromatic(e, sigma)).collect();
        rand::seq::index::sample(rng, pool.len(), count).into_iter().map(|i| pool[i].clone()).collect()
    } else {
        let mut seen = HashSet::with_capacity(count);
        let mut edges = Vec::with_capacity(count);
        while edges.len() < count {
            let e = random_kset(n, k, rng);
            if !monochromatic(&e, sigma) && seen.insert(e.clone()) {
                edges.push(e);
            }
        }
        edges
    };
    debug_assert!(edges.iter().all(|e| !monochromatic(e, sigma)));
    Ok(Checked::with(finish(n, k, edges), warnings))
}
