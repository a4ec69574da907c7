use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hypercolor", version, about = "Second-moment tools for q-coloring random k-uniform hypergraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for randomized commands. Falls back to the config file, then
    /// HYPERCOLOR_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML or JSON file with default values for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Bound on q^n for exhaustive enumeration.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Leave out the timing block so reruns are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    D,
    S,
    Stable,
    Tame,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Threshold bounds, scalar constants and optionally the s-stable gap table.
    Bounds(BoundsArgs),
    /// Entropy, energy and rate of an overlap matrix.
    Rate(RateArgs),
    /// Multistart projected ascent of the rate function.
    Maximize(MaximizeArgs),
    /// Planted instances and their core decomposition.
    SimulateCore(SimulateArgs),
    /// Exhaustive cluster of a planted coloring on a tiny instance.
    SimulateCluster(ClusterArgs),
    /// Exact first moment against Monte Carlo, and the Potts partition function.
    OracleVerify(OracleArgs),
    /// F(a_stable) - F(ā) over a grid of q and γ.
    CondensationScan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Emit F(ā) - F(ā(s)) - q^{0.999-k} for 1 ≤ s < q.
    #[arg(long)]
    pub gap_table: bool,
    /// Density for the gap table (default: the new lower bound).
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub c: Option<f64>,
    /// flat, identity, stable, s-stable, or a path to a .json/.csv matrix.
    #[arg(long, default_value = "flat")]
    pub matrix: String,
    /// Stability index for `--matrix s-stable`.
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, value_enum)]
    pub domain: Option<Domain>,
    /// Stability index for `--domain stable`.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub grad_tol: Option<f64>,
    /// Disable flattening moves.
    #[arg(long)]
    pub no_flatten: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Divide the core thresholds by this factor.
    #[arg(long)]
    pub scale: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub scale: Option<f64>,
    /// Also count tame colorings of the instance.
    #[arg(long)]
    pub tame: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Edge count; defaults to ceil(c n) when `--c` is given.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Inverse temperature for the Potts partition function of one sample.
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub k: Option<u32>,
    /// Values of q (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u32>,
    /// Values of γ (default: 11 points from ln 2 to 2).
    #[arg(long, value_delimiter = ',')]
    pub gammas: Vec<f64>,
}
