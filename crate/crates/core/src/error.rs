//! Error types for state construction, tensor extraction, and criteria.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("local dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid generator label for d = {d}: {reason}")]
    InvalidLabel { d: usize, reason: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("matrix is not unitary within tolerance (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("numerical integrity violation in {context}: residue {residue:e}")]
    NumericalIntegrity { context: &'static str, residue: f64 },

    #[error("non-finite entry in input matrix")]
    NonFinite,

    #[error("criterion {criterion} requires local dimension {required}, state has d = {actual}")]
    CriterionDimension {
        criterion: &'static str,
        required: &'static str,
        actual: usize,
    },

    #[error("the restricted 4x16 tensor needs d >= 3: its four generators degenerate at d = 2")]
    RestrictedRequiresQudit,

    #[error("scaling conventions disagree: {context}")]
    ConventionMismatch { context: &'static str },

    #[error("coefficient table has {actual} entries, expected {expected}")]
    IncompleteTable { expected: usize, actual: usize },

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("norm {norm} never exceeds threshold {threshold}: no critical point in [0, 1]")]
    NoCrossing { norm: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
