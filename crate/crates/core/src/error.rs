use thiserror::Error;

use crate::complex::ValidationReport;

/// Errors raised by the library. Semantic negatives (a map that is not psp,
/// a relation that fails) are reported as values, never as errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(ValidationReport),

    #[error("unknown complex `{0}`")]
    UnknownComplex(String),

    #[error("bad parameter: {0}")]
    Parameter(String),

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("complex `{0}` has directed loops; a path length bound is required")]
    LoopsWithoutBound(String),

    #[error("operation needs an exhaustive class table, but `{0}` was analyzed with a length bound")]
    BoundedTable(String),

    #[error("path concatenation leaves the bounded class table (length > {0})")]
    BeyondBound(usize),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("not a square swap: {0}")]
    NotASwap(String),

    #[error("map is not admissible: {0}")]
    NotAdmissible(String),

    #[error("malformed witness at vertex `{vertex}`: {reason}")]
    MalformedWitness { vertex: String, reason: String },

    #[error("search budget exhausted after {explored} nodes ({found} results so far)")]
    Budget { explored: u64, found: usize },

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no section cover with at most {max_k} patches")]
    NoCover { max_k: usize },

    #[error("invalid monoid table: {0}")]
    Monoid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
