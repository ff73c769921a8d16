//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("mixed fields or rings: {0}")]
    Mismatch(String),
    #[error("matrix must be square, got {0}x{1}")]
    NonSquare(usize, usize),
    #[error("bad reduction mod {0} of '{1}' (denominator divisible by the prime)")]
    BadPrime(u64, String),
    #[error("ideal is not homogeneous: generator '{0}'")]
    NotHomogeneous(String),
    #[error("arrangement not in general position; vanishing minors (row sets): {0:?}")]
    NotGeneralPosition(Vec<[usize; 4]>),
    #[error("repeated nodes in hyperelliptic arrangement")]
    RepeatedNodes,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("stage '{0}' failed: {1}")]
    Stage(String, String),
    #[error("two-prime disagreement in {0}: unstable, bad prime suspected")]
    PrimeDisagreement(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
