use super::{enumerate_colorings, Filter};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::rng::stream;
use crate::simulator::sample_hypergraph;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

/// Mean and standard error of `Z_q` over `trials` independent uniform
/// hypergraphs with `n` vertices and `m` edges. Trial `t` uses the stream
/// `(seed, t)`.
pub fn empirical_first_moment(
    n: usize,
    k: usize,
    m: usize,
    q: usize,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Result<MomentEstimate> {
    if trials < 2 {
        return Err(Error::param(format!("need at least 2 trials, got {trials}")));
    }
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, t as u64);
            let h = sample_hypergraph(n, k, m, &mut rng)?;
            Ok(enumerate_colorings(&h, q, Filter::All, false, budget)?.counts.z_q)
        })
        .collect::<Result<_>>()?;
    let sum: u128 = counts.iter().map(|&z| z as u128).sum();
    let sum_sq: u128 = counts.iter().map(|&z| (z as u128) * (z as u128)).sum();
    let t = trials as u128;
    // Exact integer numerator of the sample variance times t (t - 1).
    let var_num = t * sum_sq - sum * sum;
    let var = var_num as f64 / (t * (t - 1)) as f64;
    Ok(MomentEstimate { mean: sum as f64 / trials as f64, std_error: (var / trials as f64).sqrt(), trials })
}

/// [`empirical_first_moment`] with `m = ceil(c n)` from the parameters.
pub fn empirical_first_moment_params(p: &ModelParams, trials: usize, seed: u64, budget: u64) -> Result<MomentEstimate> {
    let n = p.n.ok_or_else(|| Error::param("vertex count n is required"))?;
    let m = p.m().expect("n is set");
    empirical_first_moment(n as usize, p.k as usize, m as usize, p.q as usize, trials, seed, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_has_no_variance() {
        let e = empirical_first_moment(4, 3, 1, 2, 50, 1, 1 << 20).unwrap();
        assert_eq!(e.mean, 12.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn no_edges() {
        let p = ModelParams::new(3, 3, 0.0).unwrap().with_n(5).unwrap();
        let e = empirical_first_moment_params(&p, 10, 1, 1 << 20).unwrap();
        assert_eq!(e.mean, 243.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn reproducible() {
        let a = empirical_first_moment(6, 3, 4, 2, 100, 9, 1 << 20).unwrap();
        let b = empirical_first_moment(6, 3, 4, 2, 100, 9, 1 << 20).unwrap();
        assert_eq!(a, b);
        assert!(empirical_first_moment(6, 3, 4, 2, 1, 9, 1 << 20).is_err());
    }
}
