//! Two-qubit state discrimination with the degree of entanglement as the only
//! relative parameter.
//!
//! Two parties share pairs of qubits drawn from one of two ensembles. Each
//! ensemble is a Schmidt-form family `cos(α/2)|n,m⟩ + e^{iβ}·sin(α/2)|−n,−m⟩`
//! whose local directions `n`, `m` are uniform on the polar great circle of
//! the Bloch sphere, so the entanglement angle `α` (and the phase `β`) is the
//! only parameter that survives averaging. The averaged state is the isotropic
//! mixture `ρ(q) = ¼(1 + q·k⊗k)` with `q = sin α · cos β` and
//! `k = [[0,1],[−1,0]]`, supported on the two Bell planes. A single two-outcome
//! projective measurement onto those planes then discriminates the ensembles
//! with average success `½ + |q₂ − q₁|/4`, reaching certainty for a singlet-like
//! versus triplet-like pair and `½` for product states.
//!
//! The crate provides the state constructors, the closed-form averaged density
//! matrix together with quadrature and Monte-Carlo oracles for it, the
//! Bell-plane and symmetric/antisymmetric measurements, seeded discrimination
//! experiments (including the product-state baseline that attains 3/4), and
//! the payoff algebra with its optimization over the phases.
//!
//! All randomness flows through explicitly seeded generators; Monte-Carlo runs
//! are partitioned into fixed-size blocks with per-block RNG streams, so
//! results are identical for any worker count.

pub mod discrimination;
pub mod ensemble;
pub mod error;
pub mod measurement;
pub mod qubit;
pub mod tol;
pub mod twoqubit;

pub use error::Error;
