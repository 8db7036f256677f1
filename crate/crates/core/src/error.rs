//! Error type shared by every layer of the library.

use thiserror::Error;

/// Everything that can go wrong when building or transforming formal data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("field mismatch: Q({left}) vs Q({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("not a prime: {0}")]
    NotPrime(u64),

    #[error("no such orthogonal space: {0}")]
    NonexistentSpace(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a subparameter: {0}")]
    NotASubparameter(String),

    #[error("trivial character does not occur in {0}")]
    TrivialNotContained(String),

    #[error("character {chi} does not occur in {phi}")]
    CharNotContained { chi: String, phi: String },

    #[error("operation is defined for tempered parameters only: {0}")]
    TemperedOnly(String),

    #[error("theta lift vanishes: {0}")]
    ThetaVanishes(String),

    #[error("unsupported side: {0}")]
    UnsupportedSide(String),

    #[error("summand is not self-dual orthogonal: {0}")]
    NotSelfDualOrthogonal(String),

    #[error("bad character: {0}")]
    BadCharacter(String),
}

impl Error {
    /// Stable diagnostic code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateInput(_) => "E101",
            Error::FieldMismatch { .. } => "E102",
            Error::NotPrime(_) => "E103",
            Error::NonexistentSpace(_) => "E104",
            Error::InvalidParameter(_) => "E201",
            Error::NotASubparameter(_) => "E202",
            Error::BadCharacter(_) => "E203",
            Error::TrivialNotContained(_) => "E301",
            Error::CharNotContained { .. } => "E302",
            Error::TemperedOnly(_) => "E303",
            Error::ThetaVanishes(_) => "E304",
            Error::UnsupportedSide(_) => "E401",
            Error::NotSelfDualOrthogonal(_) => "E501",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
