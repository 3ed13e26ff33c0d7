use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rank {0}: ranks must be at least 1")]
    InvalidRank(i64),

    #[error("invalid subtriple: {0}")]
    InvalidSubtriple(String),

    #[error("improper candidate {0}: the full triple is not a proper subtriple")]
    ImproperCandidate(String),

    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid |Φ|² profile: {0}")]
    InvalidProfile(String),

    #[error("dimension mismatch: expected {expected} samples, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("solution is not feasible")]
    InfeasibleSolution,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
