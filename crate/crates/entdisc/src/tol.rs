//! Numeric tolerances shared by constructors, validators and tests.
//!
//! Everything in this crate is low-dimensional (2- and 4-vectors, 4×4
//! matrices), so roundoff stays within a few hundred ulps and the tight
//! 1e-12 budgets below are comfortable. The looser values are for quantities
//! that pass through an iterative eigensolver or a caller-supplied operator.

/// Unit-norm slack for state vectors.
pub const NORM: f64 = 1e-12;

/// Hermiticity defect allowed in density matrices and effects.
pub const HERMITICITY: f64 = 1e-12;

/// Unit-trace slack for density matrices.
pub const TRACE: f64 = 1e-12;

/// Eigenvalues may undershoot zero by this much and still count as PSD.
pub const PSD_SLACK: f64 = 1e-12;

/// Mixing parameter may overshoot |q| = 1 by this much.
pub const Q_RANGE: f64 = 1e-12;

/// Unitarity defect of operators constructed by this crate.
pub const UNITARY: f64 = 1e-12;

/// Unitarity defect beyond which `apply_local` rejects a caller's operator.
pub const UNITARY_REJECT: f64 = 1e-10;

/// Spectral decomposition: reconstruction error and Gram-matrix residual.
pub const DECOMP: f64 = 1e-10;

/// POVM completeness defect (sum of effects vs identity).
pub const COMPLETENESS: f64 = 1e-12;

/// Effect eigenvalues must lie in [-EFFECT_EIGS, 1 + EFFECT_EIGS].
pub const EFFECT_EIGS: f64 = 1e-12;

/// Probabilities below this are an error; negatives above it are zeroed.
pub const PROB_FLOOR: f64 = -1e-9;

/// Allowed deviation of a probability vector's sum from 1.
pub const PROB_SUM: f64 = 1e-9;
