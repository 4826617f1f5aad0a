//! Engine-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    /// Mismatched dimensions, rings, or other structural inputs.
    #[error("input mismatch: {0}")]
    InputMismatch(String),

    /// A differential composition failed to vanish.
    #[error("not a chain complex: {0}")]
    NotAComplex(String),

    /// A chain map failed to commute with the differentials.
    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    /// A finite dimension was required but the module is infinite-dimensional.
    #[error("infinite dimension: {0}")]
    InfiniteDimension(String),

    /// Spectral-sequence rank data is inconsistent with the entries.
    #[error("inconsistent rank data at (p, q) = ({p}, {q}): {detail}")]
    InconsistentRanks { p: i64, q: i64, detail: String },

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A curve or model specification is invalid.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
