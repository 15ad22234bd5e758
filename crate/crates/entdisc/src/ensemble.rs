//! The ensemble-averaged two-qubit state and its verification oracles.
//!
//! Averaging the Schmidt-form state over independent uniform polar directions
//! leaves a one-parameter mixture
//!
//! ```text
//! ρ(q) = ¼ (1 + q·k⊗k),   k = [[0, 1], [−1, 0]],   q = sin α · cos β,
//! ```
//!
//! supported on the two Bell planes span{φ⁺, ψ⁻} (eigenvalue (1+q)/4) and
//! span{φ⁻, ψ⁺} (eigenvalue (1−q)/4). [`rho_analytic`] builds the closed form;
//! [`rho_quadrature`] recomputes the average by trapezoidal quadrature, which
//! is exact here because every matrix entry is a trigonometric polynomial of
//! degree ≤ 1 per angle, and [`rho_montecarlo`] does the same stochastically.
//! Agreement of the three is the core correctness check of the crate.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::Error;
use crate::qubit::{sample_polar, PolarAngle};
use crate::tol;
use crate::twoqubit::{schmidt_state, LocalOperator, SchmidtParams, TwoQubitPure};

/// The single scalar `q = sin α · cos β` that the averaged state depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingParameter(f64);

impl MixingParameter {
    pub fn new(q: f64) -> Result<Self, Error> {
        if q.abs() > 1.0 + tol::Q_RANGE {
            return Err(Error::MixingOutOfRange { q });
        }
        Ok(MixingParameter(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `q = sin α · cos β`. Always within range, so this cannot fail.
pub fn q_of(alpha: f64, beta: f64) -> MixingParameter {
    MixingParameter(alpha.sin() * beta.cos())
}

pub(crate) fn max_mod_diff(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// 4×4 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(Matrix4<Complex64>);

impl DensityMatrix4 {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self, Error> {
        let herm = max_mod_diff(&m, &m.adjoint());
        if herm > tol::HERMITICITY {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("hermiticity defect {herm:e}"),
            });
        }
        let trace = m.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > tol::TRACE {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {trace} is not 1"),
            });
        }
        let min_eig = m
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        if min_eig < -tol::PSD_SLACK {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {min_eig:e}"),
            });
        }
        Ok(DensityMatrix4(m))
    }

    /// The rank-1 density matrix |ψ⟩⟨ψ|.
    pub fn pure(psi: &TwoQubitPure) -> Self {
        DensityMatrix4::new(psi.projector()).expect("a projector onto a unit vector is valid")
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// ‖self − other‖_max over entry moduli.
    pub fn max_abs_diff(&self, other: &DensityMatrix4) -> f64 {
        max_mod_diff(&self.0, &other.0)
    }
}

/// Closed form of the averaged state,
/// `¼·[[1,0,0,q],[0,1,−q,0],[0,−q,1,0],[q,0,0,1]]`.
pub fn rho_analytic(q: MixingParameter) -> DensityMatrix4 {
    let d = Complex64::new(0.25, 0.0);
    let o = Complex64::new(0.25 * q.value(), 0.0);
    let z = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        d,  z,  z,  o,
        z,  d, -o,  z,
        z, -o,  d,  z,
        o,  z,  z,  d,
    );
    DensityMatrix4::new(m).expect("closed form is a valid density matrix")
}

/// Deterministic oracle: averages |ψ(θn, θm)⟩⟨ψ(θn, θm)| over an N×N uniform
/// periodic grid. Exact up to roundoff for N ≥ 2; callers must pass N ≥ 8.
pub fn rho_quadrature(alpha: f64, beta: f64, grid_points: usize) -> DensityMatrix4 {
    assert!(grid_points >= 8, "grid must be ≥ 8");
    let n = grid_points;
    let mut acc = Matrix4::<Complex64>::zeros();
    for a in 0..n {
        let theta_n = PolarAngle::new(TAU * a as f64 / n as f64);
        for b in 0..n {
            let theta_m = PolarAngle::new(TAU * b as f64 / n as f64);
            let psi = schmidt_state(SchmidtParams::new(alpha, beta, theta_n, theta_m));
            acc += psi.projector();
        }
    }
    // Dividing the raw sum once keeps the accumulated rounding well below
    // the 1e-12 agreement budget.
    DensityMatrix4::new(acc / Complex64::new((n * n) as f64, 0.0))
        .expect("grid average of projectors is a valid density matrix")
}

/// Stochastic oracle: sample mean of |ψ⟩⟨ψ| over independent uniform draws
/// of (θn, θm). Entrywise error against [`rho_analytic`] is O(1/√trials).
pub fn rho_montecarlo<R: Rng + ?Sized>(
    alpha: f64,
    beta: f64,
    trials: u64,
    rng: &mut R,
) -> DensityMatrix4 {
    assert!(trials >= 1, "trials must be ≥ 1");
    let mut acc = Matrix4::<Complex64>::zeros();
    for _ in 0..trials {
        let theta_n = sample_polar(rng);
        let theta_m = sample_polar(rng);
        let psi = schmidt_state(SchmidtParams::new(alpha, beta, theta_n, theta_m));
        acc += psi.projector();
    }
    DensityMatrix4::new(acc / Complex64::new(trials as f64, 0.0))
        .expect("sample average of projectors is a valid density matrix")
}

/// Eigensystem of a density matrix, eigenvalues descending.
///
/// Within a degenerate eigenspace the eigenvector choice is solver-dependent;
/// compare against subspace projectors, never against fixed vectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [TwoQubitPure; 4],
}

pub fn eigendecompose(rho: &DensityMatrix4) -> SpectralDecomp {
    let se = rho.matrix().symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());

    let eigenvalues = order.map(|i| se.eigenvalues[i]);
    let eigenvectors =
        order.map(|i| TwoQubitPure::from_unit(Vector4::from(se.eigenvectors.column(i))));

    let mut reconstructed = Matrix4::<Complex64>::zeros();
    for (lambda, v) in eigenvalues.iter().zip(&eigenvectors) {
        reconstructed += v.projector() * Complex64::new(*lambda, 0.0);
    }
    debug_assert!(max_mod_diff(&reconstructed, rho.matrix()) <= tol::DECOMP);

    SpectralDecomp {
        eigenvalues,
        eigenvectors,
    }
}

/// Real rotation `[[cos φ, −sin φ], [sin φ, cos φ]]`.
pub fn so2_rotation(phi: f64) -> LocalOperator {
    let (s, c) = phi.sin_cos();
    LocalOperator::new(nalgebra::Matrix2::new(
        Complex64::new(c, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(c, 0.0),
    ))
}

/// ‖(U₁⊗U₂) ρ (U₁⊗U₂)ᵀ − ρ‖_max with Uₖ = so2_rotation(φₖ).
///
/// The averaged state commutes with every such rotation pair, so the defect
/// vanishes on the ρ(q) family and is large for generic states.
pub fn invariance_defect(rho: &DensityMatrix4, phi1: f64, phi2: f64) -> f64 {
    let u = so2_rotation(phi1)
        .matrix()
        .kronecker(so2_rotation(phi2).matrix());
    let rotated = u * rho.matrix() * u.transpose();
    max_mod_diff(&rotated, rho.matrix())
}

/// Separability margin of ρ(q): with the Bell-plane weights f = (1+q)/2 and
/// g = (1−q)/2 the criterion reads max{|2f−1|−1, |2g−1|−1} ≤ 0, which
/// simplifies to |q| − 1. Nonpositive for every reachable q, so the averaged
/// states are separable across the whole parameter range.
pub fn separability_margin(q: MixingParameter) -> f64 {
    let f = 0.5 * (1.0 + q.value());
    let g = 0.5 * (1.0 - q.value());
    let margin_f = (2.0 * f - 1.0).abs() - 1.0;
    let margin_g = (2.0 * g - 1.0).abs() - 1.0;
    margin_f.max(margin_g)
}

/// Largest separability margin over `samples` uniform draws of (α, β).
pub fn max_separability_margin(samples: u64, seed: u64) -> f64 {
    assert!(samples >= 1, "samples must be ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max = f64::NEG_INFINITY;
    for _ in 0..samples {
        let alpha = TAU * rng.random::<f64>();
        let beta = TAU * rng.random::<f64>();
        max = max.max(separability_margin(q_of(alpha, beta)));
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twoqubit::{bell_states, tensor};
    use crate::qubit::polar_state;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn q_of_examples() {
        assert_abs_diff_eq!(q_of(FRAC_PI_2, 0.0).value(), 1.0, epsilon = 1e-15);
        assert_eq!(q_of(0.0, 1.7).value(), 0.0);
        assert_abs_diff_eq!(q_of(FRAC_PI_2, FRAC_PI_3).value(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn mixing_parameter_rejects_out_of_range() {
        assert!(MixingParameter::new(1.5).is_err());
        assert!(MixingParameter::new(-1.0).is_ok());
    }

    #[test]
    fn rho_analytic_at_zero_is_maximally_mixed() {
        let rho = rho_analytic(MixingParameter::new(0.0).unwrap());
        let expected = Matrix4::identity() * Complex64::new(0.25, 0.0);
        assert!(max_mod_diff(rho.matrix(), &expected) <= 1e-15);
    }

    #[test]
    fn rho_analytic_off_diagonal_signs() {
        let rho = rho_analytic(MixingParameter::new(1.0).unwrap());
        let m = rho.matrix();
        assert_abs_diff_eq!(m[(0, 3)].re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(3, 0)].re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 2)].re, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(2, 1)].re, -0.25, epsilon = 1e-15);
    }

    #[test]
    fn rho_analytic_is_a_bell_plane_mixture() {
        let q = 0.37;
        let rho = rho_analytic(MixingParameter::new(q).unwrap());
        let b = bell_states();
        let plane_plus = b.phi_plus.projector() + b.psi_minus.projector();
        let plane_minus = b.phi_minus.projector() + b.psi_plus.projector();
        let mixture = plane_plus * Complex64::new((1.0 + q) / 4.0, 0.0)
            + plane_minus * Complex64::new((1.0 - q) / 4.0, 0.0);
        assert!(max_mod_diff(rho.matrix(), &mixture) <= 1e-15);
    }

    #[test]
    fn density_matrix_validation_rejects_bad_input() {
        // Trace 2.
        let m = Matrix4::identity() * Complex64::new(0.5, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
        // Non-Hermitian.
        let mut m = Matrix4::identity() * Complex64::new(0.25, 0.0);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
        // Negative eigenvalue, Hermitian, trace 1.
        let mut m = Matrix4::zeros();
        m[(0, 0)] = Complex64::new(1.5, 0.0);
        m[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form_at_full_mixing() {
        let rho = rho_quadrature(FRAC_PI_2, 0.0, 16);
        let expected = rho_analytic(q_of(FRAC_PI_2, 0.0));
        assert!(rho.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn quadrature_of_product_ensemble_is_maximally_mixed() {
        let rho = rho_quadrature(0.0, 0.0, 16);
        let expected = rho_analytic(MixingParameter::new(0.0).unwrap());
        assert!(rho.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_form_at_a_generic_point() {
        let rho = rho_quadrature(FRAC_PI_3, 1.1, 16);
        let expected = rho_analytic(q_of(FRAC_PI_3, 1.1));
        assert!(rho.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn montecarlo_converges_to_the_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rho = rho_montecarlo(FRAC_PI_2, 0.0, 100_000, &mut rng);
        let expected = rho_analytic(q_of(FRAC_PI_2, 0.0));
        // 3σ with per-entry variance ≤ 1/4.
        assert!(rho.max_abs_diff(&expected) < 0.02);
    }

    #[test]
    fn montecarlo_single_trial_is_a_pure_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = rho_montecarlo(1.0, 0.5, 1, &mut rng);
        let m = rho.matrix();
        assert!(max_mod_diff(&(m * m), m) <= 1e-12);
    }

    #[test]
    fn montecarlo_is_bitwise_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(77);
        let mut b = ChaCha8Rng::seed_from_u64(77);
        let ra = rho_montecarlo(1.2, 2.3, 500, &mut a);
        let rb = rho_montecarlo(1.2, 2.3, 500, &mut b);
        assert_eq!(ra.matrix(), rb.matrix());
    }

    #[test]
    fn eigendecompose_fully_degenerate_case() {
        let d = eigendecompose(&rho_analytic(MixingParameter::new(0.0).unwrap()));
        for lambda in d.eigenvalues {
            assert_abs_diff_eq!(lambda, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigendecompose_extreme_mixing() {
        let d = eigendecompose(&rho_analytic(MixingParameter::new(1.0).unwrap()));
        assert_abs_diff_eq!(d.eigenvalues[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(d.eigenvalues[1], 0.5, epsilon = 1e-12);
        assert!(d.eigenvalues[2].abs() <= 1e-12);
        assert!(d.eigenvalues[3].abs() <= 1e-12);

        // The support at q = 1 is the plane spanned by φ⁺ and ψ⁻.
        let b = bell_states();
        let plane = b.phi_plus.projector() + b.psi_minus.projector();
        for v in &d.eigenvectors[..2] {
            let residual = (plane * v.amplitudes() - v.amplitudes()).norm();
            assert!(residual <= 1e-10);
        }
    }

    #[test]
    fn eigendecompose_intermediate_mixing() {
        let d = eigendecompose(&rho_analytic(MixingParameter::new(0.5).unwrap()));
        let expected = [0.375, 0.375, 0.125, 0.125];
        for (got, want) in d.eigenvalues.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn so2_rotation_examples() {
        let id = so2_rotation(0.0);
        assert!(max2_diff(id.matrix(), &nalgebra::Matrix2::identity()) <= 1e-15);

        let quarter = so2_rotation(FRAC_PI_2);
        assert!(quarter.matrix()[(0, 0)].norm() <= 1e-15);
        assert_abs_diff_eq!(quarter.matrix()[(0, 1)].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(quarter.matrix()[(1, 0)].re, 1.0, epsilon = 1e-15);

        let prod = so2_rotation(0.8).matrix() * so2_rotation(-0.8).matrix();
        assert!(max2_diff(&prod, &nalgebra::Matrix2::identity()) <= 1e-15);
    }

    fn max2_diff(
        a: &nalgebra::Matrix2<Complex64>,
        b: &nalgebra::Matrix2<Complex64>,
    ) -> f64 {
        (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rotations_leave_the_averaged_state_invariant() {
        let rho = rho_analytic(MixingParameter::new(0.6).unwrap());
        assert!(invariance_defect(&rho, 0.3, 1.7) <= 1e-12);
        assert_eq!(invariance_defect(&rho, 0.0, 0.0), 0.0);
    }

    #[test]
    fn invariance_defect_detects_non_invariant_states() {
        let ket00 = tensor(
            &polar_state(PolarAngle::new(0.0)),
            &polar_state(PolarAngle::new(0.0)),
        );
        let rho = DensityMatrix4::pure(&ket00);
        assert!(invariance_defect(&rho, PI / 4.0, 0.0) > 0.1);
    }

    #[test]
    fn separability_margin_examples() {
        assert_eq!(separability_margin(MixingParameter::new(0.0).unwrap()), -1.0);
        assert_eq!(separability_margin(MixingParameter::new(1.0).unwrap()), 0.0);
        assert_eq!(separability_margin(MixingParameter::new(-1.0).unwrap()), 0.0);
        assert_abs_diff_eq!(
            separability_margin(MixingParameter::new(0.5).unwrap()),
            -0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sampled_margins_never_go_positive() {
        assert!(max_separability_margin(2_000, 3) <= 0.0);
    }
}
