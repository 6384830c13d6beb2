use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("block length {0} is outside the supported range 1..={max}", max = crate::f2::MAX_LENGTH)]
    LengthOutOfRange(usize),

    #[error("coordinate {coord} is outside 1..={len}")]
    CoordinateOutOfRange { coord: usize, len: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what}: requested {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("minimum distance of the zero code is undefined")]
    UndefinedDistance,

    #[error("unknown curve `{name}`; known curves: {known}")]
    UnknownCurve { name: String, known: String },

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
