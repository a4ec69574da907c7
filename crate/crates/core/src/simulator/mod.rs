//! Random and planted hypergraphs, colorings, edge counts and the core
//! process behind the cluster-size bound.

mod cluster;
mod coloring;
mod core;
mod counts;
mod hypergraph;
pub mod io;
mod sampling;

pub use self::core::{extract_core, peel, CoreDecomposition, Thresholds};
pub use cluster::{
    cluster_size_log_bound, cluster_size_log_bound_from_counts, in_cluster, separability_scan, Rejection,
    SeparabilityReport, Violation,
};
pub use coloring::Coloring;
pub use counts::{edge_count_m, edge_qualifies, mask};
pub use hypergraph::Hypergraph;
pub use sampling::{planted_edge_probability, sample_hypergraph, sample_planted, DENSE_LIMIT};

/// Monochromatic edges of `tau`.
pub fn monochromatic_count(h: &Hypergraph, tau: &Coloring) -> usize {
    h.edges().filter(|e| is_monochromatic(e, tau)).count()
}

pub fn is_proper(h: &Hypergraph, sigma: &Coloring) -> bool {
    !h.edges().any(|e| is_monochromatic(e, sigma))
}

fn is_monochromatic(e: &[u32], tau: &Coloring) -> bool {
    let c = tau.color(e[0] as usize);
    e[1..].iter().all(|&v| tau.color(v as usize) == c)
}
