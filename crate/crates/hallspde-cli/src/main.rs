//! `hallspde`: drive the spectral Hall-MHD jump-noise simulator from a
//! config file - single runs, ensembles, truncation studies, and the
//! invariant verification suite.

mod commands;
mod config;
mod manifest;
mod output;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "hallspde", version, about)]
struct Cli {
    /// Path to the run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for run artifacts.
    #[arg(long, default_value = "out", global = true)]
    out: PathBuf,

    /// Override the master seed from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for ensembles (falls back to HALLSPDE_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Overwrite an existing run directory.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single trajectory and write its energy series.
    Simulate,
    /// Run the configured ensemble and write moment estimates.
    Ensemble,
    /// Run the same physics across truncation levels with coupled noise.
    Study {
        /// Comma-separated truncation levels, e.g. `--levels 2,4,8`.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<f64>>,
    },
    /// Run the invariant suites of every module; exit non-zero on failure.
    Verify,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let jobs = cli.jobs.or_else(|| {
        std::env::var("HALLSPDE_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("building the worker pool")?;
    }

    let config_path = cli
        .config
        .context("--config PATH is required")?;
    let mut config = config::parse_config(&config_path)?;
    if let Some(seed) = cli.seed {
        config.run.seed = seed;
    }

    match cli.command {
        Command::Simulate => {
            commands::cmd_simulate(&config, &cli.out, cli.force)?;
            Ok(0)
        }
        Command::Ensemble => {
            commands::cmd_ensemble(&config, &cli.out, cli.force)?;
            Ok(0)
        }
        Command::Study { levels } => {
            commands::cmd_study(&config, &cli.out, levels, cli.force)?;
            Ok(0)
        }
        Command::Verify => {
            let ok = commands::cmd_verify(&config, &cli.out, cli.force)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}
