use std::path::PathBuf;

use thiserror::Error;

/// Exit code for a malformed or inconsistent configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for a numerical failure during a run.
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit code for I/O failures, which the contract does not otherwise cover.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Failures while time stepping or diagonalising are numerical; everything
/// else the core rejects traces back to the configuration.
impl From<oqs_market::Error> for CliError {
    fn from(e: oqs_market::Error) -> Self {
        use oqs_market::Error as E;
        match e {
            E::NumericalFailure { .. }
            | E::NoConvergence { .. }
            | E::MonotonicityViolation { .. }
            | E::ComplexExpectation { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
