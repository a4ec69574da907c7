//! `hypercolor` command-line front end.
//!
//! Every command writes one JSON document (or a CSV view of its outputs).
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 enumeration budget.

mod args;
mod commands;
mod config;
mod error;
mod output;

use args::{Cli, Command, Format};
use clap::error::ErrorKind;
use clap::Parser;
use commands::Context;
use config::FileConfig;
use error::CliResult;
use output::{Document, Timing};
use std::io::Write;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    let file = match &g.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(t) = g.threads.or(file.threads) {
        if t == 0 {
            return Err(error::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| error::usage(format!("cannot size the worker pool: {e}")))?;
    }
    let format = g.format.or(file.format).unwrap_or(Format::Json);
    let seed = file.seed(g.seed)?;
    let budget = commands::default_budget(g.budget.or(file.budget));
    let ctx = Context { file, seed, budget };

    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let start = Instant::now();
    let (name, report) = match &cli.command {
        Command::Bounds(a) => ("bounds", commands::bounds(&ctx, a)?),
        Command::Rate(a) => ("rate", commands::rate_cmd(&ctx, a)?),
        Command::Maximize(a) => ("maximize", commands::maximize_cmd(&ctx, a)?),
        Command::SimulateCore(a) => ("simulate-core", commands::simulate_core(&ctx, a)?),
        Command::SimulateCluster(a) => ("simulate-cluster", commands::simulate_cluster(&ctx, a)?),
        Command::OracleVerify(a) => ("oracle-verify", commands::oracle_verify(&ctx, a)?),
        Command::CondensationScan(a) => ("condensation-scan", commands::condensation(&ctx, a)?),
    };
    let timing = (!g.no_timing).then(|| Timing { timestamp, elapsed_seconds: start.elapsed().as_secs_f64() });
    let text = match format {
        Format::Json => output::to_json(&Document {
            schema: output::SCHEMA,
            tool: "hypercolor",
            version: commands::VERSION,
            command: name,
            inputs: report.inputs,
            outputs: report.outputs,
            warnings: report.warnings,
            timing,
        }),
        Format::Csv => output::to_csv(&report.outputs),
    };
    match &g.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
