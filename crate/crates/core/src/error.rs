use thiserror::Error;

/// Errors raised by the algebra, the applications and the wire formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    MixedDescriptors,
    #[error("operands belong to different skew polynomial rings")]
    MixedContexts,
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is not a unit (deg det = {0})")]
    NotAUnit(String),
    #[error("commutative oracle requires the trivial twist")]
    NotCommutative,
    #[error("wrong twist: {0}")]
    WrongTwist(String),
    #[error("deg det is infinite")]
    InfiniteDegDet,
    #[error("operator has degree zero")]
    DegreeZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Machine-readable error kind, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedDescriptors => "MixedDescriptors",
            Error::MixedContexts => "MixedContexts",
            Error::InvalidDescriptor(_) => "InvalidDescriptor",
            Error::Parse { .. } => "ParseError",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotCommutative => "NotCommutative",
            Error::WrongTwist(_) => "WrongTwist",
            Error::InfiniteDegDet => "InfiniteDegDet",
            Error::DegreeZero => "DegreeZero",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by malformed input text rather than by the algebra.
    pub fn is_user_input(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidDescriptor(_) | Error::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
