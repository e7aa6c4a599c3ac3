//! Driver for central extension discriminant and fiber analyses: JSON
//! problem specs, batch commands, scans and reports.

pub mod analysis;
pub mod commands;
pub mod input;
pub mod worked;
pub mod render;
pub mod report;
pub mod scan;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Core(#[from] cextdisc_core::Error),
}

impl CliError {
    /// Parse, validation and usage errors exit with 2; failures inside a
    /// computation count as failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

/// Worker threads from `CEXTDISC_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("CEXTDISC_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}
