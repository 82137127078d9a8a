use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A length-`n` window contains a repeated letter. `position` is the
    /// 1-based start of the window.
    #[error("window starting at position {position} contains repeated letter {letter}")]
    MalformedWindow { position: usize, letter: u32 },

    #[error("{what} of {requested} exceeds the configured maximum {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
