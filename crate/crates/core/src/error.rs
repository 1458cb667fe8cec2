use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series does not terminate: no nonpositive integer numerator parameter")]
    NonTerminating,

    /// A Pochhammer factor in a denominator vanished.
    #[error("denominator pole: {0}")]
    DenominatorPole(String),

    #[error("degree {n} exceeds N = {cap}")]
    DegreeExceedsN { n: usize, cap: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("unknown identity tag {0:?}")]
    UnknownTag(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::DenominatorPole(msg.into())
    }

    /// `true` for the errors a random parameter draw should be resampled on.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::DenominatorPole(_)
                | Error::DegreeExceedsN { .. }
                | Error::DivisionByZero
        )
    }
}
