mod coupling;
mod crofton;
mod misc;
mod radius;
mod volume;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::CliError;
use crate::output::ExperimentRecord;
use randset_core::rng::{mix, stream_id_for};
use randset_core::{Estimate, RngStream};
use rayon::prelude::*;
use std::time::Instant;

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, CliError> {
    let mut ctx = Ctx::new(cfg);
    match cfg.experiment {
        Experiment::RadiusConvergence => radius::run(&mut ctx)?,
        Experiment::VolumeSweep => volume::run(&mut ctx)?,
        Experiment::Coupling => coupling::run(&mut ctx)?,
        Experiment::Crofton => crofton::run(&mut ctx)?,
        Experiment::Warmup1d => misc::warmup(&mut ctx)?,
        Experiment::MeetingCounts => misc::meeting_counts(&mut ctx)?,
        Experiment::Cone => misc::cone(&mut ctx)?,
    }
    Ok(ctx.records)
}

/// Summary rows use this replicate index.
const SUMMARY: i64 = -1;

/// FNV-1a of a metric name.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Per-experiment state: configuration, the current lambda, and the
/// records emitted so far.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    records: Vec<ExperimentRecord>,
    lambda_index: usize,
    lambda: f64,
    started: Instant,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a ExperimentConfig) -> Self {
        Self { cfg, records: Vec::new(), lambda_index: 0, lambda: cfg.lambda_grid[0], started: Instant::now() }
    }

    /// Iterate over the lambda grid, timing each block.
    pub fn for_each_lambda(
        &mut self,
        mut f: impl FnMut(&mut Self, f64) -> Result<(), CliError>,
    ) -> Result<(), CliError> {
        for (i, &l) in self.cfg.lambda_grid.clone().iter().enumerate() {
            self.lambda_index = i;
            self.lambda = l;
            self.started = Instant::now();
            let first = self.records.len();
            f(self, l)?;
            if self.cfg.timings {
                let ms = self.started.elapsed().as_millis() as u64;
                self.records[first..].iter_mut().for_each(|r| r.runtime_ms = ms);
            }
        }
        Ok(())
    }

    /// Stream for replicate `rep` of sub-task `task` at the current lambda.
    /// Keyed by lambda index, so extending the grid leaves earlier
    /// replicates unchanged.
    pub fn stream(&self, task: &str, rep: u64) -> RngStream {
        let label = format!("{}/{task}", self.cfg.experiment.name());
        RngStream::new(self.cfg.seed, stream_id_for(&label, &[self.lambda_index as u64, rep]))
    }

    fn push(&mut self, replicate: i64, metric: String, value: f64, std_error: Option<f64>) {
        let rep = if replicate < 0 { u64::MAX } else { replicate as u64 };
        let base = stream_id_for(self.cfg.experiment.name(), &[self.lambda_index as u64, rep]);
        let seed = mix(self.cfg.seed ^ mix(base ^ fnv(&metric)));
        self.records.push(ExperimentRecord {
            experiment: self.cfg.experiment.name().to_string(),
            d: self.cfg.d.get(),
            lambda: self.lambda,
            replicate,
            seed,
            metric,
            value,
            std_error,
            runtime_ms: 0,
        });
    }

    /// A summary value without standard error (exact or derived).
    pub fn exact(&mut self, metric: impl Into<String>, value: f64) {
        self.push(SUMMARY, metric.into(), value, None);
    }

    /// A summary Monte Carlo estimate.
    pub fn estimate(&mut self, metric: impl Into<String>, e: Estimate) {
        self.push(SUMMARY, metric.into(), e.value, Some(e.std_err));
    }

    /// A per-replicate value.
    pub fn replicate(&mut self, rep: usize, metric: impl Into<String>, value: f64) {
        self.push(rep as i64, metric.into(), value, None);
    }
}

/// Evaluate `f` on replicates `0..n` in parallel, results in index order.
pub(crate) fn par_replicates<T, F>(n: usize, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(u64) -> Result<T, randset_core::Error> + Sync + Send,
{
    (0..n as u64).into_par_iter().map(f).collect::<Result<Vec<T>, _>>().map_err(CliError::from)
}
