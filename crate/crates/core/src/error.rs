use thiserror::Error;

use crate::groebner::GbReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variables are not strictly descending under tau at `{0}`")]
    NotTauSorted(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown grading `{0}`")]
    UnknownGrading(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("coefficient {0} is not an element of the field")]
    CoefficientNotInField(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("multi-index {0} is not in the required index set")]
    IndexOutOfRange(String),
    #[error("outside proven range: {0}")]
    OutOfTheoremRange(String),
    #[error("resource guard exceeded: {reason}")]
    Aborted { reason: String, report: Box<GbReport> },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_abort(&self) -> bool {
        matches!(self, Error::Aborted { .. })
    }
}
