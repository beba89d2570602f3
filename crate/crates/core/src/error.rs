use thiserror::Error;

use crate::arithmetic::Rational;

/// Errors raised by the library. The CLI maps the variants onto exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {0} is outside the tabulated K-theory data")]
    OutOfTable(i64),

    #[error("torsion order {0} is not an integer; the Sha order is inconsistent with zeta(1-m)")]
    NonIntegralTorsion(Rational),

    #[error("Sha(D) = {0} is not an integer; |delta| must divide Sha(m)*Sha(n)")]
    NonIntegralSha(Rational),

    #[error("gram matrix is not positive definite (leading minor {index} is {minor})")]
    NotPositiveDefinite { index: usize, minor: Rational },

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
