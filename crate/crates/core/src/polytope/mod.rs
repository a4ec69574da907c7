//! Overlap matrices and the domains they are maximized over.

mod domain;
mod flatten;
mod matrix;
mod sample;

pub use domain::{
    is_in_d, is_in_s, is_separable_matrix, is_tame_matrix, separable_window, stability_index, stability_threshold,
    DomainTag, SeparabilityWindow,
};
pub use flatten::{averaging_condition, averaging_mu_lower, flatten};
pub use matrix::{overlap_counts, overlap_of, OverlapMatrix};
pub use sample::{
    project_rows, project_to_d, random_point_in_d, random_point_in_s, random_point_in_tame, random_stable_point,
    sinkhorn, Projection, DEFAULT_PROJECTION_ITERATIONS,
};
