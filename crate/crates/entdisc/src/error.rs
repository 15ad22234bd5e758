//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state norm {norm} deviates from 1 by more than {tol}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("operator is not unitary (defect {defect}, limit {tol})")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("mixing parameter {q} lies outside [-1, 1]")]
    MixingOutOfRange { q: f64 },

    #[error("not a valid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("not a valid measurement effect: {reason}")]
    InvalidEffect { reason: String },

    #[error("POVM effects sum to identity with defect {defect}, limit {tol}")]
    IncompletePovm { defect: f64, tol: f64 },

    #[error("probability {value} at index {index} is below the allowed floor")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tol}")]
    ProbabilitySum { sum: f64, tol: f64 },

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}
