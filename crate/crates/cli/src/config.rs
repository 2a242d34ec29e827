//! Experiment configuration: a flat TOML file overlaid by command-line flags.

use crate::error::CliError;
use clap::{Parser, ValueEnum};
use randset_core::Dimension;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    RadiusConvergence,
    VolumeSweep,
    Coupling,
    Crofton,
    #[value(name = "warmup-1d")]
    #[serde(rename = "warmup-1d")]
    Warmup1d,
    MeetingCounts,
    Cone,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::RadiusConvergence => "radius-convergence",
            Experiment::VolumeSweep => "volume-sweep",
            Experiment::Coupling => "coupling",
            Experiment::Crofton => "crofton",
            Experiment::Warmup1d => "warmup-1d",
            Experiment::MeetingCounts => "meeting-counts",
            Experiment::Cone => "cone",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "randset", version, about = "Monte Carlo experiments for random intersection models and Poisson tessellations")]
pub struct Args {
    /// Experiment to run.
    pub experiment: Experiment,
    /// TOML file with experiment parameters; flags override its values.
    #[arg(long)]
    pub config: PathBuf,
    /// Ambient dimension.
    #[arg(long)]
    pub d: Option<usize>,
    /// Comma-separated intensity grid.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<f64>>,
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Inner Monte Carlo sample size (experiment-specific).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of rays in direction grids.
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Record wall-clock milliseconds in `runtime_ms` (otherwise 0, keeping
    /// reruns byte-identical).
    #[arg(long)]
    pub timings: bool,
}

/// Keys accepted in the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    experiment: Option<Experiment>,
    d: Option<usize>,
    lambda: Option<Vec<f64>>,
    replicates: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    grid_size: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
    timings: Option<bool>,
    /// Radius of the small ball for meeting counts.
    eps: Option<f64>,
    /// Cone half-angles.
    beta: Option<Vec<f64>>,
    /// Segment length for hyperplane crossings.
    length: Option<f64>,
    /// Initial window radius for zero cells.
    window: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub d: Dimension,
    pub lambda_grid: Vec<f64>,
    pub replicates: usize,
    pub samples: usize,
    pub seed: u64,
    pub grid_size: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub timings: bool,
    pub eps: f64,
    pub beta_grid: Vec<f64>,
    pub length: f64,
    pub window: f64,
}

const MAX_DIM: usize = 8;

impl ExperimentConfig {
    /// Defaults sized so each experiment finishes in minutes on a desktop.
    pub fn defaults(experiment: Experiment) -> Self {
        let (d, lambda_grid, replicates, samples) = match experiment {
            Experiment::RadiusConvergence => (2, vec![10.0, 50.0, 200.0], 100_000, 0),
            Experiment::VolumeSweep => (2, vec![1e2, 1e3, 1e4], 100_000, 2_000),
            Experiment::Coupling => (2, vec![1e3, 3e3, 1e4], 200, 0),
            Experiment::Crofton => (2, vec![2.0], 10_000, 0),
            Experiment::Warmup1d => (1, vec![100.0], 100_000, 0),
            Experiment::MeetingCounts => (2, vec![1e4], 20_000, 0),
            Experiment::Cone => (2, vec![1e3], 2_000, 200_000),
        };
        Self {
            experiment,
            d: Dimension::new(d).expect("default dimension"),
            lambda_grid,
            replicates,
            samples,
            seed: 1,
            grid_size: 720,
            output_path: None,
            format: Format::Csv,
            timings: false,
            eps: 1e-3,
            beta_grid: vec![PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0],
            length: 1.0,
            window: 10.0,
        }
    }

    /// Defaults, then the file at `args.config`, then flags.
    pub fn from_args(args: &Args) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(&args.config)
            .map_err(|e| CliError::Config(format!("{}: {e}", args.config.display())))?;
        Self::from_parts(args, &text, &args.config)
    }

    pub fn from_parts(args: &Args, file_text: &str, file_name: &Path) -> Result<Self, CliError> {
        let file: FileConfig =
            toml::from_str(file_text).map_err(|e| CliError::Config(format!("{}: {e}", file_name.display())))?;
        if let Some(e) = file.experiment {
            if e != args.experiment {
                return Err(CliError::Config(format!(
                    "{}: field `experiment` is {:?} but the command asks for {:?}",
                    file_name.display(),
                    e.name(),
                    args.experiment.name()
                )));
            }
        }
        let mut cfg = Self::defaults(args.experiment);
        let d = args.d.or(file.d);
        if let Some(d) = d {
            cfg.d = Dimension::new(d).map_err(|_| field("d", "must be at least 1"))?;
        }
        if let Some(l) = args.lambda.clone().or(file.lambda) {
            cfg.lambda_grid = l;
        }
        if let Some(v) = args.replicates.or(file.replicates) {
            cfg.replicates = v;
        }
        if let Some(v) = args.samples.or(file.samples) {
            cfg.samples = v;
        }
        if let Some(v) = args.seed.or(file.seed) {
            cfg.seed = v;
        }
        if let Some(v) = args.grid_size.or(file.grid_size) {
            cfg.grid_size = v;
        }
        cfg.output_path = args.out.clone().or(file.out);
        if let Some(v) = args.format.or(file.format) {
            cfg.format = v;
        }
        cfg.timings = args.timings || file.timings.unwrap_or(false);
        if let Some(v) = file.eps {
            cfg.eps = v;
        }
        if let Some(v) = file.beta {
            cfg.beta_grid = v;
        }
        if let Some(v) = file.length {
            cfg.length = v;
        }
        if let Some(v) = file.window {
            cfg.window = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let d = self.d.get();
        if d > MAX_DIM {
            return Err(field("d", &format!("must be at most {MAX_DIM}")));
        }
        if self.replicates == 0 {
            return Err(field("replicates", "must be at least 1"));
        }
        if self.lambda_grid.is_empty() {
            return Err(field("lambda", "grid must be nonempty"));
        }
        if let Some(l) = self.lambda_grid.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(field("lambda", &format!("{l} is not a positive finite number")));
        }
        if self.grid_size < 4 {
            return Err(field("grid_size", "must be at least 4"));
        }
        use Experiment::*;
        match self.experiment {
            Coupling | Cone if d != 2 => return Err(field("d", "this experiment is planar; use d = 2")),
            Warmup1d if d != 1 => return Err(field("d", "the warm-up model is one-dimensional; use d = 1")),
            Crofton if d < 2 => return Err(field("d", "zero cells need d >= 2")),
            _ => {}
        }
        match self.experiment {
            Coupling => {
                // Shell containment needs 2 ln^2(lambda) / lambda < 1.
                if let Some(l) = self.lambda_grid.iter().find(|&&l| l < 50.0) {
                    return Err(field("lambda", &format!("{l} too small for the coupling; use lambda >= 50")));
                }
            }
            VolumeSweep | Cone if self.samples == 0 => return Err(field("samples", "must be at least 1")),
            MeetingCounts if !(self.eps > 0.0 && self.eps <= 0.01) => {
                return Err(field("eps", "must lie in (0, 0.01]"));
            }
            Crofton => {
                if !(self.window >= 10.0 && self.window.is_finite()) {
                    return Err(field("window", "must be at least 10"));
                }
                if !(self.length > 0.0 && self.length < self.window) {
                    return Err(field("length", "must be positive and below the window radius"));
                }
            }
            Cone => {
                if let Some(b) = self.beta_grid.iter().find(|b| !(**b > 0.0 && **b < PI)) {
                    return Err(field("beta", &format!("{b} outside (0, pi)")));
                }
                if self.beta_grid.is_empty() {
                    return Err(field("beta", "grid must be nonempty"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn field(name: &str, msg: &str) -> CliError {
    CliError::Config(format!("field `{name}`: {msg}"))
}
