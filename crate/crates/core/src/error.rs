use thiserror::Error;

/// Errors raised by the loaders, solvers and recognizers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph text. `offset` is the byte offset into the input and
    /// `line` the 1-based line the problem was found on.
    #[error("parse error at line {line} (byte {offset}): {message}")]
    Parse {
        offset: usize,
        line: usize,
        message: String,
    },

    #[error("matching overflow: more than {cap} perfect matchings")]
    MatchingOverflow { cap: usize },

    #[error("cycle overflow: more than {cap} alternating cycles")]
    CycleOverflow { cap: usize },

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    /// An argument is outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// A caller broke a documented precondition (for example, passing a
    /// matching that does not belong to the graph).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
