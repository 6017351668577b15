use crate::rational::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root index mismatch: {0} vs {1}")]
    RootIndexMismatch(u64, u64),

    #[error("root index {n} too small: {n} * {b} is not a positive integer")]
    RootIndexTooSmall { n: u64, b: Rational },

    #[error("cyclotomic index {0} exceeds the supported limit")]
    CyclotomicIndexTooLarge(u64),

    #[error("not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("pole at the evaluation point")]
    Pole,

    #[error("evaluation with root index {0} requires u*v in {{0, 1}}")]
    UnsupportedEvaluation(u64),

    #[error("log-terminal violation: discrepancy {0} <= -1")]
    LogTerminalViolation(Rational),

    #[error("not integrable: discrepancy {0} <= -1")]
    NotIntegrable(Rational),

    #[error("stringy Hodge numbers do not exist: {0}")]
    StringyHodgeDoNotExist(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid resolution data: {0}")]
    InvalidData(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan is not Q-Gorenstein: cone {cone:?} admits no linear function equal to 1 on its rays")]
    NotQGorenstein { cone: Vec<usize> },

    #[error("box enumeration for cone {cone:?} needs {index} points, above the cap {cap}")]
    CapExceeded { cone: Vec<usize>, index: String, cap: u64 },

    #[error("not a refinement: {0}")]
    NotARefinement(String),

    #[error("refinement is not smooth: cone {0:?}")]
    NotSmooth(Vec<usize>),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
