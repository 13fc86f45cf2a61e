use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// [`Error::CapExceeded`] is kept apart from everything else: it means a
/// search gave up, not that the answer is negative.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("empty permutation domain")]
    EmptyDomain,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} is outside the domain of size {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: u128 },
    #[error("group is not transitive")]
    Intransitive,
    #[error("invalid block system: {0}")]
    InvalidBlocks(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("sequence too short: {0}")]
    SequenceTooShort(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
