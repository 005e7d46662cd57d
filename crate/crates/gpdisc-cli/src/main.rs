//! `gpdisc` — experiments on the Gross-Pitaevskii theory of a rotating Bose
//! gas in a flat disc trap with Dirichlet walls.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod config;
mod output;
mod runner;

use clap::Parser;
use config::{parse_config, ConfigError, ExperimentConfig, Mode};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "gpdisc",
    about = "Rotating Bose gas in a disc trap: TF layer, radial profiles, 2D GP minimization, vortices, critical speeds"
)]
struct Cli {
    /// One of: tf, profile, giant-vortex, minimize2d, vortices, third-speed,
    /// symmetry, phase-diagram
    mode: String,

    /// Configuration file (key = value lines with [section] headers)
    #[arg(long)]
    config: Option<String>,

    /// Output directory
    #[arg(long)]
    out: Option<String>,

    /// Worker pool size for sweeps (falls back to GPDISC_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,

    /// Seed for randomized trial states
    #[arg(long)]
    seed: Option<u64>,

    /// Comma-separated output formats: csv,json,svg
    #[arg(long)]
    format: Option<String>,

    /// Interaction scale, overrides the config
    #[arg(long)]
    epsilon: Option<f64>,

    /// Angular speed (single value or start:stop:step sweep)
    #[arg(long)]
    omega: Option<String>,

    /// Angular speed in the giant-vortex scaling Omega0/(eps^2 |log eps|)
    #[arg(long)]
    omega0: Option<String>,

    /// Radial nodes for 1D profiles
    #[arg(long)]
    profile_n: Option<usize>,

    /// Radial nodes for 2D fields
    #[arg(long)]
    nr: Option<usize>,

    /// Angular nodes for 2D fields
    #[arg(long)]
    ntheta: Option<usize>,

    /// Euler-Lagrange residual tolerance (absolute)
    #[arg(long)]
    tol: Option<f64>,

    /// Iteration budget per minimization
    #[arg(long)]
    max_iters: Option<usize>,

    /// Field snapshot input for the vortices mode
    #[arg(long)]
    field: Option<String>,
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let mut text = String::new();
    if let Some(path) = &cli.config {
        text = std::fs::read_to_string(path).map_err(|e| ConfigError::Validation {
            field: "config".into(),
            message: format!("cannot read {path}: {e}"),
        })?;
    }
    // inline flags append after the file so they take precedence; the parser
    // rejects duplicates, so overrides are written into a synthetic section
    let mut cfg = parse_config(&text)?;
    cfg.mode = Mode::parse(&cli.mode).ok_or_else(|| ConfigError::Validation {
        field: "mode".into(),
        message: format!("unknown mode `{}`", cli.mode),
    })?;
    if let Some(v) = &cli.out {
        cfg.out_dir = v.clone();
    }
    if let Some(v) = cli.threads {
        cfg.threads = v;
    } else if let Ok(env) = std::env::var("GPDISC_THREADS") {
        if cli.threads.is_none() && !env.is_empty() {
            cfg.threads = env.parse().map_err(|_| ConfigError::Validation {
                field: "GPDISC_THREADS".into(),
                message: format!("`{env}` is not a positive integer"),
            })?;
        }
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.format {
        cfg.formats = v.split(',').map(|s| s.trim().to_string()).collect();
    }
    let mut overrides = String::new();
    if let Some(v) = cli.epsilon {
        overrides.push_str(&format!("epsilon = {v}\n"));
    }
    if let Some(v) = &cli.omega {
        overrides.push_str(&format!("omega = {v}\n"));
    }
    if let Some(v) = &cli.omega0 {
        overrides.push_str(&format!("omega0 = {v}\n"));
    }
    if let Some(v) = cli.profile_n {
        overrides.push_str(&format!("profile_n = {v}\n"));
    }
    if let Some(v) = cli.nr {
        overrides.push_str(&format!("nr = {v}\n"));
    }
    if let Some(v) = cli.ntheta {
        overrides.push_str(&format!("ntheta = {v}\n"));
    }
    if let Some(v) = cli.tol {
        overrides.push_str(&format!("tol = {v}\n"));
    }
    if let Some(v) = cli.max_iters {
        overrides.push_str(&format!("max_iters = {v}\n"));
    }
    if let Some(v) = &cli.field {
        overrides.push_str(&format!("field = {v}\n"));
    }
    if !overrides.is_empty() {
        let merged = apply_overrides(cfg, &overrides)?;
        return Ok(merged);
    }
    Ok(cfg)
}

fn apply_overrides(
    mut cfg: ExperimentConfig,
    overrides: &str,
) -> Result<ExperimentConfig, ConfigError> {
    // reuse the parser on a fresh config, then copy the overridden fields by
    // re-parsing against the existing one key by key
    for (idx, line) in overrides.lines().enumerate() {
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
            line: idx + 1,
            message: "expected key = value".into(),
        })?;
        crate::config::apply_override(&mut cfg, key.trim(), value.trim())?;
    }
    crate::config::validate_public(&cfg)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    match runner::run_experiment(&cfg) {
        Ok(record) => {
            println!(
                "{} finished in {} ms; {} artifacts in {}",
                record.mode,
                record.wall_ms,
                record.artifacts.len(),
                cfg.out_dir
            );
            for (k, v) in &record.scalars {
                println!("  {k} = {v:.9}");
            }
            for w in &record.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
    }
}
