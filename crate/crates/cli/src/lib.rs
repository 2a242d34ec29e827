//! Experiment runner behind the `randset` binary.
//!
//! Each experiment expands a validated [`ExperimentConfig`] into a list of
//! [`ExperimentRecord`]s. Replicates run on a rayon pool and are collected
//! in index order, so the output depends only on the configuration.

pub mod config;
mod error;
pub mod experiments;
pub mod output;

pub use config::{Args, Experiment, ExperimentConfig, Format};
pub use error::CliError;
pub use output::{ExperimentRecord, CSV_HEADER};

use std::fs::File;
use std::io::{BufWriter, Write};

/// Worker pool sized by `RANDSET_THREADS` when set, else by rayon's default.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RANDSET_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("RANDSET_THREADS={v:?} is not a positive integer")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}

/// Run the configured experiment and write its records.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, CliError> {
    let pool = thread_pool()?;
    let records = pool.install(|| experiments::run(cfg))?;
    match &cfg.output_path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w, cfg.format, &records)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w, cfg.format, &records)?;
            w.flush()?;
        }
    }
    Ok(records)
}

fn write<W: Write>(w: W, format: Format, records: &[ExperimentRecord]) -> Result<(), CliError> {
    match format {
        Format::Csv => output::write_csv(w, records),
        Format::Json => output::write_json(w, records),
    }
}
