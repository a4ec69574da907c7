//! Structured warnings. Small-q parameter regimes are reported, not rejected.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// κ is at least 1, or leaves no room above the stability constant.
    KappaOutOfRange {
        q: f64,
        k: u32,
        kappa: f64,
    },
    /// The separability window was clamped to (const/q, 1/q).
    SeparabilityWindowClamped {
        q: usize,
        k: u32,
        kappa: f64,
    },
    /// The classical lower bound is reported without its unknown ε term.
    EpsilonOmitted {
        q: u32,
        k: u32,
    },
    /// μ outside [3 ln ln q / ln q, 1]; the averaging condition is false.
    MuOutOfRange {
        mu: f64,
        lower: f64,
    },
    /// A coloring is not balanced.
    Unbalanced {
        n: usize,
        q: usize,
    },
    /// Ascent starts restarted after a failed projection.
    RestartedStarts {
        count: usize,
    },
    /// Ascent starts that hit the step limit.
    UnconvergedStarts {
        count: usize,
    },
    /// Flattening moves that satisfied the averaging condition but lowered F.
    FlattenDecrease {
        count: usize,
        worst: f64,
    },
    /// The cluster-size threshold uses the bare profile sum without Θ(1) factors.
    ClusterThresholdWithoutConstants,
    /// c was clamped at zero.
    ClampedDensity {
        gamma: f64,
    },
    Other {
        message: String,
    },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::KappaOutOfRange { q, k, kappa } => {
                write!(f, "kappa({q}, {k}) = {kappa} is outside its meaningful range")
            }
            Warning::SeparabilityWindowClamped { q, k, kappa } => {
                write!(f, "separability window empty for q={q}, k={k} (kappa={kappa}); clamped to (const/q, 1/q)")
            }
            Warning::EpsilonOmitted { q, k } => {
                write!(f, "classical lower bound for q={q}, k={k} omits the unknown epsilon term")
            }
            Warning::MuOutOfRange { mu, lower } => {
                write!(f, "mu = {mu} outside [{lower}, 1]; averaging condition treated as false")
            }
            Warning::Unbalanced { n, q } => write!(f, "coloring with n={n}, q={q} is not balanced"),
            Warning::RestartedStarts { count } => {
                write!(f, "{count} ascent start(s) restarted after a failed projection")
            }
            Warning::UnconvergedStarts { count } => {
                write!(f, "{count} ascent start(s) hit the step limit")
            }
            Warning::FlattenDecrease { count, worst } => {
                write!(f, "{count} flattening move(s) met the averaging condition but lowered F (worst {worst:e})")
            }
            Warning::ClusterThresholdWithoutConstants => {
                write!(f, "cluster threshold uses the bare expected balanced count (no constant factors)")
            }
            Warning::ClampedDensity { gamma } => {
                write!(f, "gamma = {gamma} gives negative density; c clamped to 0")
            }
            Warning::Other { message } => f.write_str(message),
        }
    }
}

/// A value together with the warnings raised while computing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checked<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Checked<T> {
    pub fn clean(value: T) -> Self {
        Checked { value, warnings: Vec::new() }
    }

    pub fn with(value: T, warnings: Vec<Warning>) -> Self {
        Checked { value, warnings }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Checked<U> {
        Checked { value: f(self.value), warnings: self.warnings }
    }
}
