//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be a positive integer")]
    InvalidConductor,
    #[error("scalar belongs to the field of conductor {found}, expected {expected}")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("hyperplane normal is the zero covector")]
    ZeroNormal,
    #[error("covector has length {found}, expected the ambient dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplane index {index} out of range for an arrangement with {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the given subspace is not a flat of this arrangement")]
    NotAFlat,
    #[error("arrangement is empty")]
    EmptyArrangement,
    #[error("invalid modular chain: {0}")]
    InvalidChain(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("{0} (this indicates an internal bug, not bad input)")]
    Inconsistency(String),
    #[error("certificate invalid at step {step}: {reason}")]
    Certificate { step: usize, reason: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported catalog key: {0}")]
    UnknownCatalogKey(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
