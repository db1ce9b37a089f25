use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the CLI exit-status contract through
/// [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: wrong shapes, out-of-range parameters, bad ids.
    #[error("invalid input: {0}")]
    Input(String),

    /// A matrix failed density-matrix validation.
    #[error("validation failed ({invariant}): {detail}")]
    Validation {
        invariant: &'static str,
        detail: String,
    },

    /// Moments or bounds that no real spectrum can produce.
    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn validation(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            detail: detail.into(),
        }
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Process exit status: 1 usage, 2 validation, 3 numerical inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Validation { .. } | Error::Parse(_) | Error::Io(_) => 2,
            Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
