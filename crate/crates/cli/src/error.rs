//! CLI errors and their process exit codes.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: io::Error },
    #[error("config error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("config error at line {line} ({field}): {message}")]
    Bound {
        line: usize,
        field: String,
        message: String,
    },
    #[error("config error: {0}")]
    Invalid(String),
    #[error("solver error: {0}")]
    Solver(#[from] polyshock_core::Error),
    #[error("verification failed: {failed} of {total} checks")]
    Verification { failed: usize, total: usize },
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
    #[error("malformed profile CSV: {0}")]
    Csv(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 2 configuration, 3 solver failure (5 no
    /// sub-shock, 6 sonic singularity), 4 verification failure, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        use polyshock_core::Error as E;
        match self {
            CliError::ReadConfig { .. }
            | CliError::Parse { .. }
            | CliError::Bound { .. }
            | CliError::Invalid(_) => 2,
            CliError::Solver(E::NoSubshock { .. }) => 5,
            CliError::Solver(E::SonicSingularity { .. }) => 6,
            CliError::Solver(_) => 3,
            CliError::Verification { .. } => 4,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}
