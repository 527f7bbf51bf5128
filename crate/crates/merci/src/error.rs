//! Crate-wide error type.

use std::fmt;
use std::io;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by metric evaluation, training, and file ingestion.
#[derive(Debug)]
pub enum Error {
    /// A metric was requested on an empty evaluation set.
    EmptySet,
    /// A value or configuration violates a documented precondition.
    InvalidInput(String),
    /// Training loss became non-finite.
    Diverged {
        epoch: usize,
    },
    /// An ensemble member failed; `index` is the member position.
    Member {
        method: String,
        index: usize,
        source: Box<Error>,
    },
    /// One repetition of a benchmark run failed.
    Run {
        method: String,
        run: usize,
        source: Box<Error>,
    },
    /// A triplet file could not be parsed; `line` is 1-based.
    Parse {
        line: usize,
        message: String,
    },
    /// A method name that no estimator answers to.
    UnknownMethod {
        name: String,
    },
    Io(io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySet => write!(f, "empty evaluation set"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Diverged { epoch } => {
                write!(f, "training diverged: loss became non-finite at epoch {epoch}")
            }
            Error::Member {
                method,
                index,
                source,
            } => write!(f, "{method} member {index} failed: {source}"),
            Error::Run {
                method,
                run,
                source,
            } => write!(f, "method `{method}` run {run} failed: {source}"),
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::UnknownMethod { name } => write!(
                f,
                "unknown method `{name}`; valid names: mcd, mi, bagging, me, mn, le, oracle, constant"
            ),
            Error::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Member { source, .. } | Error::Run { source, .. } => Some(source),
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(err: io::Error) -> Self {
        Error::Io(err)
    }
}
