use std::path::PathBuf;

use patternforge_core::Error;

/// Exit status for usage and parse errors.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for failed checks and verification failures.
pub const EXIT_FAILED: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } => EXIT_USAGE,
            CliError::Failed(_) => EXIT_FAILED,
            CliError::Core(e) => match e {
                Error::Parse(_)
                | Error::BadLength { .. }
                | Error::InvalidParameter(_)
                | Error::ExcludedAngle(_)
                | Error::UnsupportedOrder(_)
                | Error::NotDivisible { .. }
                | Error::OrderMismatch { .. }
                | Error::DuplicatePoint(..)
                | Error::EmptySet
                | Error::TooFewPoints { .. } => EXIT_USAGE,
                _ => EXIT_FAILED,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
