//! Exhaustive references for tiny instances. Everything here is exact or
//! plain Monte Carlo; nothing is clever.

mod empirical;
mod enumerate;
mod first_moment;
mod potts;
mod tame;

pub use empirical::{empirical_first_moment, empirical_first_moment_params, MomentEstimate};
pub use enumerate::{enumerate_cluster, enumerate_colorings, Enumeration, ExactCounts, Filter};
pub use first_moment::{binomial_big, exact_expected_balanced, exact_expected_colorings, ratio_to_f64, MAX_EXACT_N};
pub use potts::{energy_histogram, partition_function, EnergyHistogram};
pub use tame::{count_tame, TameCount};

use crate::error::{Error, Result};

/// Default bound on `q^n` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub(crate) fn check_budget(q: usize, n: usize, budget: u64) -> Result<()> {
    let states = (q as f64).powi(n as i32);
    if states > budget as f64 {
        return Err(Error::Budget { states, budget });
    }
    Ok(())
}
