//! Benchmark harness for the `informed-rrt` planner: experiment families
//! with paired seeds, CSV outputs, summary statistics, plot-series files,
//! and SVG snapshots of 2-d runs.
//!
//! Every experiment runs both planner modes on the identical world and seed,
//! so per-seed comparisons are paired. Outputs are deterministic given the
//! experiment config, except for wall-clock columns.

pub mod config;
pub mod experiment;
pub mod plot;
pub mod records;
pub mod stats;

pub use experiment::{run_experiment, ExperimentOutcome, ExperimentSpec, Family};
pub use records::RunRecord;
pub use stats::{median_ci, SummaryRow};

/// Harness-level errors; planner errors pass through.
#[derive(thiserror::Error, Debug)]
pub enum BenchError {
    #[error(transparent)]
    Planner(#[from] informed_rrt::Error),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported plot format {got:?}; supported: {supported}")]
    UnsupportedFormat { got: String, supported: &'static str },
}

pub type Result<T> = std::result::Result<T, BenchError>;

impl BenchError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        BenchError::Io { path: path.display().to_string(), source }
    }
}
