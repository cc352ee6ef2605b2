use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{message}, line {line}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{0}")]
    Domain(String),

    #[error("cannot contract a loop (edge {0})")]
    LoopContraction(usize),

    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),

    #[error("vector is not a cycle: boundary is nonzero at vertex {0}")]
    NotACycle(usize),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// Whether the error indicates a failed internal cross-check rather than
    /// bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
