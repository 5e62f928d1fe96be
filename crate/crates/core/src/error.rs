use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} = {value} lies outside [0, 1]")]
    Domain { name: &'static str, value: String },

    #[error("degree must be a positive integer, got {0}")]
    InvalidDegree(usize),

    #[error("expected {expected} samples, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("polynomial is not divisible by z^2 (coefficient of z^{order} is {value})")]
    NonDivisible { order: usize, value: Rational },

    #[error("gap coefficient c_{k} = {value} is negative")]
    NegativeCoefficient { k: usize, value: Rational },

    #[error("need at least 3 values for a second difference, got {0}")]
    TooShort(usize),

    #[error("function `{0}` has no exact rational samples")]
    UnsupportedExact(String),

    #[error("grid size must be even and at least 2, got {0}")]
    InvalidGridSize(usize),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse `{0}` as a rational (expected p/q or an integer)")]
    ParseRational(String),

    #[error("cannot parse function spec `{spec}`: {reason}")]
    ParseFunction { spec: String, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl ToString) -> Self {
        Error::Domain {
            name,
            value: value.to_string(),
        }
    }
}
