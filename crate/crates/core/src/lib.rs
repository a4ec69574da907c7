//! Second-moment machinery for q-coloring random k-uniform hypergraphs.
//!
//! The crate is split into:
//!
//! - [`moments`]: entropy, energy and rate of overlap matrices, special
//!   matrices, threshold bounds and the Hessian at the flat overlap.
//! - [`polytope`]: overlap matrices, the domains they live in, projections,
//!   random points and the flattening move.
//! - [`maximizer`]: multistart projected ascent of the rate function and the
//!   closed-form dominance tables.
//! - [`simulator`]: random and planted hypergraphs, edge counts, the core
//!   process and the cluster-size bound.
//! - [`oracle`]: brute-force ground truth on tiny instances.
//!
//! Vertices and colors are 0-based internally. The text formats in
//! [`simulator::io`] are 1-based.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod maximizer;
pub mod moments;
pub mod oracle;
pub mod params;
pub mod polytope;
pub mod rng;
pub mod simulator;
pub mod warning;

pub use error::{Error, Result};
pub use maximizer::{maximize, MaximizationReport, MaximizeConfig};
pub use moments::{RateValue, ThresholdBounds};
pub use params::ModelParams;
pub use polytope::{DomainTag, OverlapMatrix};
pub use simulator::{Coloring, CoreDecomposition, Hypergraph, Thresholds};
pub use warning::{Checked, Warning};
