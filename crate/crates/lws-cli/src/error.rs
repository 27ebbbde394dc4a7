//! Process-level error type: every failure maps to a documented exit code.
//!
//! The convention, used by all subcommands:
//!
//! - `1`: the file system failed (missing input, unwritable output).
//! - `2`: an input is malformed (bad flag value, bad config field, bad
//!   CSV/JSON content). Messages name the offending field or file.
//! - `3`: inputs were well-formed but the estimator could not produce a
//!   result; the message carries a stable machine-readable reason code.

use std::path::Path;

use lws_estimators::EstimatorError;
use lws_mlkit::MlError;
use lws_sim::SimError;
use thiserror::Error;

/// A subcommand failure, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// File-system failure: exit code 1.
    #[error("{message}")]
    Io { message: String },

    /// Malformed input or flag: exit code 2.
    #[error("{message}")]
    Validation { message: String },

    /// Estimation failure on well-formed input: exit code 3.
    #[error("{message} (reason: {reason})")]
    Estimation {
        reason: &'static str,
        message: String,
    },
}

impl CliError {
    /// The process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Validation { .. } => 2,
            CliError::Estimation { .. } => 3,
        }
    }

    /// A validation failure (exit 2) with the given message.
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Validation {
            message: message.into(),
        }
    }

    /// An I/O failure (exit 1) tagged with the path that caused it.
    pub fn io_at(path: &Path, err: std::io::Error) -> Self {
        CliError::Io {
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io {
            message: err.to_string(),
        }
    }
}

impl From<EstimatorError> for CliError {
    fn from(err: EstimatorError) -> Self {
        CliError::Estimation {
            reason: err.reason_code(),
            message: err.to_string(),
        }
    }
}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        match err {
            SimError::Io(e) => CliError::Io {
                message: e.to_string(),
            },
            SimError::Csv(e) if e.is_io_error() => CliError::Io {
                message: e.to_string(),
            },
            other => CliError::Validation {
                message: other.to_string(),
            },
        }
    }
}

impl From<MlError> for CliError {
    fn from(err: MlError) -> Self {
        match err {
            MlError::Io(e) => CliError::Io {
                message: e.to_string(),
            },
            MlError::Csv(e) if e.is_io_error() => CliError::Io {
                message: e.to_string(),
            },
            other => CliError::Validation {
                message: other.to_string(),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
