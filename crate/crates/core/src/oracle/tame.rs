use super::{enumerate_colorings, exact_expected_balanced, Filter};
use crate::error::Result;
use crate::simulator::{in_cluster, separability_scan, Hypergraph};
use crate::warning::Warning;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TameCount {
    pub z_q: u64,
    pub z_bal: u64,
    /// Balanced proper colorings that are separable with a cluster no
    /// larger than `threshold`.
    pub z_tame: u64,
    /// Balanced proper colorings that are separable.
    pub separable: u64,
    /// `E[Z_{q,bal}]` at the instance's edge count.
    pub threshold: f64,
    pub warnings: Vec<Warning>,
}

/// Counts tame colorings of a tiny instance: balanced, separable against
/// every balanced proper coloring, and with cluster size at most the exact
/// expected number of balanced colorings.
pub fn count_tame(h: &Hypergraph, q: usize, budget: u64) -> Result<TameCount> {
    let all = enumerate_colorings(h, q, Filter::Balanced, true, budget)?;
    let bal = all.colorings.expect("collected");
    let threshold = exact_expected_balanced(h.n(), h.k(), h.m() as u64, q)?;
    let k = h.k() as u32;
    let mut z_tame = 0;
    let mut separable = 0;
    let mut warnings = vec![Warning::ClusterThresholdWithoutConstants];
    for sigma in &bal {
        let scan = separability_scan(h, sigma, &bal)?;
        if !scan.is_separable() {
            continue;
        }
        separable += 1;
        for w in scan.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        let mut size = 0u64;
        for tau in &bal {
            if in_cluster(sigma, tau, k)?.value {
                size += 1;
            }
        }
        if BigRational::from_u64(size).expect("finite") <= threshold {
            z_tame += 1;
        }
    }
    Ok(TameCount {
        z_q: all.counts.z_q,
        z_bal: all.counts.z_bal,
        z_tame,
        separable,
        threshold: super::ratio_to_f64(&threshold),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tame_bounded_by_balanced() {
        let h = Hypergraph::from_one_based(6, 3, &[vec![1, 2, 3], vec![4, 5, 6], vec![1, 4, 5]]).unwrap();
        let t = count_tame(&h, 2, 1 << 20).unwrap();
        assert!(t.z_tame <= t.separable);
        assert!(t.separable <= t.z_bal);
        assert!(t.z_bal <= t.z_q);
    }
}
