//! Command-line driver for `algcoef-core`: problem files, stage selection,
//! JSON and text reports.
//!
//! Exit codes: 0 on success, 2 when the pipeline stops at a structured
//! mathematical failure (still reported), 1 for bad input, IO errors, or a
//! validation error above the requested tolerance.

use std::path::{Path, PathBuf};

use algcoef_core::pipeline::{run, Outcome, Stage};

pub mod report;
pub mod spec;
pub mod text;

pub use report::Report;
pub use spec::{Overrides, ProblemSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    Spec { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] algcoef_core::Error),
    #[error("validation: {0}")]
    Validation(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// Exit code for a finished run.
pub fn outcome_exit_code(o: &Outcome) -> i32 {
    if o.failure.is_some() {
        2
    } else {
        0
    }
}

/// Load `path`, apply overrides and run up to `stage`.
pub fn run_file(path: &Path, stage: Stage, overrides: &Overrides) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::load(path)?;
    let problem = spec.to_problem(path, overrides)?;
    Ok(run(&problem, stage)?)
}

/// Fail when the last validation row exceeds `tol`.
pub fn check_tolerance(o: &Outcome, tol: f64) -> Result<(), CliError> {
    let Some(v) = &o.validation else {
        return Ok(());
    };
    let Some(last) = v.rows.last() else {
        return Ok(());
    };
    let err = algcoef_core::numeric::to_f64(&last.relative_error);
    if err > tol {
        return Err(CliError::Validation(format!(
            "relative error {err:.3e} at n = {} exceeds tolerance {tol:e}",
            last.n
        )));
    }
    Ok(())
}
