//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by parameter validation, detectors, analytics, and the
/// sweep harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A named input field is out of its legal domain.
    #[error("{field}: {message}")]
    InvalidField { field: String, message: String },

    /// A precondition or numerical guard was violated.
    #[error("{0}")]
    Domain(String),

    /// File I/O failed.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Serialization or deserialization failed.
    #[error("{0}")]
    Format(String),
}

impl Error {
    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidField {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
