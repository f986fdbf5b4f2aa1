use crate::error::{CliError, CliResult};
use clap::Args;
use hardylab_core::classify::{DEFAULT_TOL, DEFAULT_T_MAX, DEFAULT_UI_EPSILON};
use hardylab_core::functions::{DEFAULT_BOUNDARY_DEPTH, DEFAULT_RADII};
use hardylab_core::grid::DEFAULT_GRID;
use hardylab_core::integrability::DEFAULT_LEVELS;
use hardylab_core::{ClassifyConfig, HarnessMode, RadialSchedule};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Every tunable of a run. Echoed into reports, except the output path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid: usize,
    /// Interior schedule `r_k = 1 − 2^{−k}`, `k = 1..=radii`.
    pub radii: usize,
    pub boundary_depth: usize,
    pub tol: f64,
    pub ui_epsilon: f64,
    pub t_max: f64,
    pub a: f64,
    pub count: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub levels: usize,
    pub mode: HarnessMode,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            radii: DEFAULT_RADII,
            boundary_depth: DEFAULT_BOUNDARY_DEPTH,
            tol: DEFAULT_TOL,
            ui_epsilon: DEFAULT_UI_EPSILON,
            t_max: DEFAULT_T_MAX,
            a: 0.5,
            count: 50,
            seed: 7,
            max_degree: 3,
            levels: DEFAULT_LEVELS,
            mode: HarnessMode::Smirnov,
            out: None,
        }
    }
}

/// Flags shared by all subcommands; unset flags keep the base value.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Grid size N.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Number of interior radii K.
    #[arg(long, global = true)]
    pub radii: Option<usize>,
    /// Classification tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// S_a radius.
    #[arg(long, global = true)]
    pub a: Option<f64>,
    /// Number of sampled self-maps.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest Blaschke degree in the sampler.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Gauge levels L.
    #[arg(long, global = true)]
    pub levels: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Output directory; the report goes to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Smirnov,
    Outer,
}

impl RunConfig {
    pub fn merged(mut self, args: &RunArgs) -> CliResult<Self> {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = args.$f { self.$f = v; } )* };
        }
        take!(grid, radii, tol, a, count, seed, max_degree, levels);
        if let Some(m) = args.mode {
            self.mode = match m {
                ModeArg::Smirnov => HarnessMode::Smirnov,
                ModeArg::Outer => HarnessMode::Outer,
            };
        }
        if args.out.is_some() {
            self.out = args.out.clone();
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> CliResult<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::parse(what.to_string()))
            }
        };
        check(
            (4..=1 << 22).contains(&self.grid),
            "--grid must lie in [4, 4194304]",
        )?;
        check(
            (2..=50).contains(&self.radii),
            "--radii must lie in [2, 50]",
        )?;
        check(
            (2..=50).contains(&self.boundary_depth),
            "boundary_depth must lie in [2, 50]",
        )?;
        check(self.tol > 0.0 && self.tol < 1.0, "--tol must lie in (0, 1)")?;
        check(
            self.ui_epsilon > 0.0 && self.ui_epsilon.is_finite(),
            "ui_epsilon must be positive",
        )?;
        check(
            self.t_max > 0.0 && self.t_max.is_finite(),
            "t_max must be positive",
        )?;
        check((0.0..1.0).contains(&self.a), "--a must lie in [0, 1)")?;
        check(
            (1..=10_000).contains(&self.count),
            "--count must lie in [1, 10000]",
        )?;
        check(
            (1..=32).contains(&self.max_degree),
            "--max-degree must lie in [1, 32]",
        )?;
        check(
            (1..=40).contains(&self.levels),
            "--levels must lie in [1, 40]",
        )?;
        Ok(())
    }

    pub fn classify_config(&self) -> CliResult<ClassifyConfig> {
        let mut cfg = ClassifyConfig::with_grid(self.grid)?;
        cfg.interior = RadialSchedule::dyadic(self.radii)?;
        cfg.boundary = RadialSchedule::dyadic(self.boundary_depth)?;
        cfg.tol = self.tol;
        cfg.ui_epsilon = self.ui_epsilon;
        cfg.t_max = self.t_max;
        Ok(cfg)
    }
}
