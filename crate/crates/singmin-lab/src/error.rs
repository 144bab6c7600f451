//! Crate-wide error type.

use std::fmt;

/// Errors produced by the library and the experiment runner.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// Generic shape/dimension mismatch.
    Dimension {
        context: &'static str,
        detail: String,
    },
    /// The invertibility gate `sigma_min > n * 2^-52 * sigma_max` failed.
    SingularMatrix,
    /// The generalized cross product of the given rows is numerically zero.
    DegenerateRows,
    /// An argument violated a documented precondition.
    Param { key: String, message: String },
    /// Configuration text could not be parsed.
    Config { line: usize, message: String },
    /// Filesystem failure while writing artifacts.
    Io(String),
}

impl Error {
    pub(crate) fn param(key: &str, message: impl Into<String>) -> Self {
        Error::Param {
            key: key.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn dim(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            context,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::Dimension { context, detail } => write!(f, "{context}: {detail}"),
            Error::SingularMatrix => write!(f, "matrix is singular to working precision"),
            Error::DegenerateRows => {
                write!(f, "rows are linearly dependent to working precision")
            }
            Error::Param { key, message } => write!(f, "parameter '{key}': {message}"),
            Error::Config { line, message } => write!(f, "config line {line}: {message}"),
            Error::Io(message) => write!(f, "io error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
