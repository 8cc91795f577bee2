use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::total_order::Width;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: Width, found: Width },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("integrity error: run {run} is not sorted at element {position}")]
    Integrity { run: usize, position: u64 },

    #[error("computation error: {0}")]
    Computation(String),

    #[error("execution error: {0}")]
    Execution(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit status for this error (sysexits-style).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format(_) | Error::Integrity { .. } => 2,
            Error::Io { .. } => 3,
            Error::Usage(_) | Error::WidthMismatch { .. } => 64,
            Error::Computation(_) | Error::Execution(_) => 70,
        }
    }
}
