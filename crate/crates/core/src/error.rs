use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivideByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not Hermitian: entry ({i},{j}) is not the conjugate of entry ({j},{i})")]
    NotHermitian { i: usize, j: usize },

    #[error("congruence transform is singular")]
    SingularTransform,

    #[error("the zero matrix does not define a projective point")]
    NotProjectivePoint,

    #[error("unsupported matrix size q={q}: {reason}")]
    UnsupportedSize { q: usize, reason: &'static str },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An internal cross-check failed. Always a bug in the arithmetic.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}
