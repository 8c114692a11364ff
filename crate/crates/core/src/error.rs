use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the reduction and segmentation pipeline.
///
/// The variants fall into three families that callers (notably the CLI)
/// map onto distinct exit codes: input/output failures, invalid parameters,
/// and internal consistency violations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("unsupported pixel format in {path}: {format} (only 8-bit gray or RGB)")]
    UnsupportedBitDepth { path: PathBuf, format: String },

    #[error("image {path} has zero width or height")]
    ZeroDimensions { path: PathBuf },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("consistency violation: {0}")]
    Consistency(String),
}

/// Coarse classification of an [`Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Parameter,
    Consistency,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Unreadable { .. }
            | Error::Decode { .. }
            | Error::UnsupportedBitDepth { .. }
            | Error::ZeroDimensions { .. }
            | Error::Write { .. } => ErrorKind::Io,
            Error::Parameter(_) => ErrorKind::Parameter,
            Error::Dimension { .. } | Error::Consistency(_) => ErrorKind::Consistency,
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
