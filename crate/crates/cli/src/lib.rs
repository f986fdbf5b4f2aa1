//! Command-line front end: boundary data I/O, function specs, and the
//! `synth`, `classify`, `gauge` and `harness` subcommands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod spec;

use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

pub use commands::{Output, SCHEMA_VERSION};
pub use config::{RunArgs, RunConfig};
pub use error::{CliError, CliResult, ExitKind};
pub use spec::{BoundarySource, FunctionBody, FunctionSpec, NamedBoundary};

#[derive(Debug, Parser)]
#[command(
    name = "hardylab",
    version,
    about = "Smirnov and outer classification on the unit disk"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outer function from a boundary data file, with an evaluation table.
    Synth {
        data: PathBuf,
        /// Argument of the unimodular constant, in radians.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c_angle: f64,
    },
    /// Smirnov, UI and outer verdicts for a function spec.
    Classify { spec: PathBuf },
    /// de la Vallée Poussin gauge for the radial family of a spec or classify report.
    Gauge {
        source: PathBuf,
        /// Largest threshold searched for knots.
        #[arg(long)]
        t_cap: Option<f64>,
    },
    /// Composition-theorem harness over a seeded sample of S_a.
    Harness { spec: PathBuf },
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> CliResult<Output> {
    let base = RunConfig::default();
    match &cli.command {
        Command::Synth { data, c_angle } => {
            commands::synth(data, *c_angle, &base.merged(&cli.run)?)
        }
        Command::Classify { spec } => commands::classify(spec, &base.merged(&cli.run)?),
        Command::Gauge { source, t_cap } => {
            let (spec, cfg) = commands::gauge_source(source, base)?;
            let cfg = cfg.merged(&cli.run)?;
            commands::gauge(
                &spec,
                source.parent().unwrap_or(Path::new(".")),
                *t_cap,
                &cfg,
            )
        }
        Command::Harness { spec } => commands::harness(spec, &base.merged(&cli.run)?),
    }
}

/// Writes `report.json` and the artifacts under `dir`.
pub fn write_output(dir: &Path, out: &Output) -> CliResult<()> {
    let io = |e: std::io::Error| {
        CliError::new(
            ExitKind::Other,
            format!("cannot write to {}: {e}", dir.display()),
        )
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join("report.json"), &out.report).map_err(io)?;
    for (name, body) in &out.artifacts {
        std::fs::write(dir.join(name), body).map_err(io)?;
    }
    Ok(())
}

/// Sizes the global rayon pool from `HARDYLAB_THREADS` when set.
pub fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("HARDYLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::parse(format!(
            "HARDYLAB_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::new(ExitKind::Other, e.to_string()))
}
