use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid matroid: {reason}")]
    InvalidMatroid { reason: String, witness: Option<String> },

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn matroid(reason: impl Into<String>, witness: Option<String>) -> Self {
        Error::InvalidMatroid { reason: reason.into(), witness }
    }

    /// The display message followed by the witness, if any.
    pub fn describe(&self) -> String {
        match self {
            Error::InvalidMatroid { witness: Some(w), .. } => format!("{self} (witness: {w})"),
            _ => self.to_string(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameters(_) => 2,
            Error::InvalidMatroid { .. } => 3,
            Error::SizeLimit(_) => 4,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
