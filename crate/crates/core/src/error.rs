use thiserror::Error;

/// Errors raised by the engine.
///
/// Arithmetic never fails; every variant signals a violated precondition or
/// malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(u32),
    #[error("index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: u32, genus: u32 },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("not a Lie element: word {0} is not Lyndon at the leading position")]
    NotLie(String),
    #[error("not a character: {0}")]
    NotCharacter(String),
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("type error at {pos}: {message}")]
    Type { pos: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
