//! Defaults read from a TOML or JSON file. Explicit flags win.

use crate::args::{Domain, Format};
use crate::error::{usage, CliResult};
use serde::Deserialize;
use std::path::Path;

pub const SEED_ENV: &str = "HYPERCOLOR_SEED";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub q: Option<u32>,
    pub k: Option<u32>,
    pub c: Option<f64>,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub s: Option<usize>,
    pub beta: Option<f64>,
    pub trials: Option<usize>,
    pub starts: Option<usize>,
    pub max_steps: Option<usize>,
    pub grad_tol: Option<f64>,
    pub domain: Option<Domain>,
    pub scale: Option<f64>,
    pub threads: Option<usize>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
    pub gammas: Option<Vec<f64>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))
        }
    }

    /// Flag, then config file, then `HYPERCOLOR_SEED`, then 0.
    pub fn seed(&self, flag: Option<u64>) -> CliResult<u64> {
        if let Some(s) = flag.or(self.seed) {
            return Ok(s);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_ENV}={v} is not a 64-bit integer"))),
            Err(_) => Ok(0),
        }
    }
}

/// `flag`, else `file`, else a usage error naming `--name`.
pub fn need<T>(flag: Option<T>, file: Option<T>, name: &str) -> CliResult<T> {
    flag.or(file).ok_or_else(|| usage(format!("missing required value --{name}")))
}
