//! Two-qubit pure states in the computational basis |00⟩,|01⟩,|10⟩,|11⟩:
//! tensor products, the Schmidt-form family, the polar-pair family, the Bell
//! basis, entanglement measures, and local operations.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::Error;
use crate::qubit::{antipodal_state, polar_state, reduce_angle, PolarAngle, QubitVector};
use crate::tol;

/// Normalized two-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure(Vector4<Complex64>);

impl TwoQubitPure {
    /// Checked constructor; rejects vectors whose norm strays from 1.
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self, Error> {
        let v = Vector4::from_row_slice(&amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized {
                norm,
                tol: tol::NORM,
            });
        }
        Ok(TwoQubitPure(v))
    }

    pub(crate) fn from_unit(v: Vector4<Complex64>) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-9);
        TwoQubitPure(v)
    }

    pub fn amplitudes(&self) -> &Vector4<Complex64> {
        &self.0
    }

    /// |⟨self|other⟩|; global phases are deliberately not normalized away,
    /// so state comparisons go through this.
    pub fn fidelity(&self, other: &TwoQubitPure) -> f64 {
        self.0.dotc(&other.0).norm()
    }

    /// Exchanges the two qubits (swaps the |01⟩ and |10⟩ amplitudes).
    pub fn swap_qubits(&self) -> TwoQubitPure {
        TwoQubitPure(Vector4::new(self.0[0], self.0[2], self.0[1], self.0[3]))
    }

    /// Rank-1 density matrix |ψ⟩⟨ψ|.
    pub fn projector(&self) -> Matrix4<Complex64> {
        &self.0 * self.0.adjoint()
    }
}

/// `a ⊗ b`, amplitude at |xy⟩ equal to `a_x · b_y`.
pub fn tensor(a: &QubitVector, b: &QubitVector) -> TwoQubitPure {
    TwoQubitPure::from_unit(a.as_vector().kronecker(b.as_vector()))
}

/// Parameters of the Schmidt-form family: entanglement angle α, phase β,
/// and the polar directions of the two local Schmidt bases. All angles are
/// reduced into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtParams {
    alpha: f64,
    beta: f64,
    theta_n: PolarAngle,
    theta_m: PolarAngle,
}

impl SchmidtParams {
    pub fn new(alpha: f64, beta: f64, theta_n: PolarAngle, theta_m: PolarAngle) -> Self {
        SchmidtParams {
            alpha: reduce_angle(alpha),
            beta: reduce_angle(beta),
            theta_n,
            theta_m,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta_n(&self) -> PolarAngle {
        self.theta_n
    }

    pub fn theta_m(&self) -> PolarAngle {
        self.theta_m
    }
}

/// `e^{−iβ/2} cos(α/2) |n,m⟩ + e^{iβ/2} sin(α/2) |−n,−m⟩`.
pub fn schmidt_state(p: SchmidtParams) -> TwoQubitPure {
    let half = p.alpha() / 2.0;
    let c = Complex64::from_polar(1.0, -p.beta() / 2.0) * half.cos();
    let s = Complex64::from_polar(1.0, p.beta() / 2.0) * half.sin();
    let nm = tensor(&polar_state(p.theta_n()), &polar_state(p.theta_m()));
    let nm_bar = tensor(&antipodal_state(p.theta_n()), &antipodal_state(p.theta_m()));
    TwoQubitPure::from_unit(nm.amplitudes() * c + nm_bar.amplitudes() * s)
}

/// Relative sign of the two branches of [`pair_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSign {
    Plus,
    Minus,
}

impl PairSign {
    pub fn factor(self) -> f64 {
        match self {
            PairSign::Plus => 1.0,
            PairSign::Minus => -1.0,
        }
    }
}

/// `(|n,−m⟩ + sign·|−n,m⟩)/√2`, a maximally entangled state with purely
/// real amplitudes for every pair of polar directions.
pub fn pair_state(sign: PairSign, theta_n: PolarAngle, theta_m: PolarAngle) -> TwoQubitPure {
    let a = tensor(&polar_state(theta_n), &antipodal_state(theta_m));
    let b = tensor(&antipodal_state(theta_n), &polar_state(theta_m));
    let f = Complex64::new(sign.factor() * FRAC_1_SQRT_2, 0.0);
    TwoQubitPure::from_unit(a.amplitudes() * Complex64::new(FRAC_1_SQRT_2, 0.0) + b.amplitudes() * f)
}

/// The Bell basis.
#[derive(Debug, Clone, Copy)]
pub struct BellStates {
    /// (|00⟩ + |11⟩)/√2
    pub phi_plus: TwoQubitPure,
    /// (|00⟩ − |11⟩)/√2
    pub phi_minus: TwoQubitPure,
    /// (|01⟩ + |10⟩)/√2
    pub psi_plus: TwoQubitPure,
    /// (|01⟩ − |10⟩)/√2, the singlet
    pub psi_minus: TwoQubitPure,
}

pub fn bell_states() -> BellStates {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    BellStates {
        phi_plus: TwoQubitPure(Vector4::new(h, z, z, h)),
        phi_minus: TwoQubitPure(Vector4::new(h, z, z, -h)),
        psi_plus: TwoQubitPure(Vector4::new(z, h, h, z)),
        psi_minus: TwoQubitPure(Vector4::new(z, h, -h, z)),
    }
}

/// Reduced state of the first qubit, `Tr₂ |ψ⟩⟨ψ|`.
pub fn reduced_density_first(psi: &TwoQubitPure) -> Matrix2<Complex64> {
    let a = psi.amplitudes();
    // ρ[i][j] = Σ_k ψ[2i+k] · conj(ψ[2j+k])
    Matrix2::new(
        a[0] * a[0].conj() + a[1] * a[1].conj(),
        a[0] * a[2].conj() + a[1] * a[3].conj(),
        a[2] * a[0].conj() + a[3] * a[1].conj(),
        a[2] * a[2].conj() + a[3] * a[3].conj(),
    )
}

/// `4·det(Tr₂ |ψ⟩⟨ψ|)`: zero for product states, one for Bell states,
/// `sin²α` on the Schmidt family. Equal to the squared concurrence.
pub fn tangle(psi: &TwoQubitPure) -> f64 {
    4.0 * reduced_density_first(psi).determinant().re
}

/// Pure-state concurrence `|⟨ψ|σy⊗σy|ψ*⟩|`; equals √tangle.
pub fn concurrence_wootters(psi: &TwoQubitPure) -> f64 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    #[rustfmt::skip]
    let syy = Matrix4::new(
         z,  z,  z, -one,
         z,  z, one,  z,
         z, one,  z,  z,
        -one, z,  z,  z,
    );
    let flipped = syy * psi.amplitudes().conjugate();
    psi.amplitudes().dotc(&flipped).norm()
}

/// A 2×2 operator acting on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator(Matrix2<Complex64>);

impl LocalOperator {
    pub fn new(entries: Matrix2<Complex64>) -> Self {
        LocalOperator(entries)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    /// ‖U·U† − I‖_max; zero for unitary U.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.0 * self.0.adjoint();
        let defect = gram - Matrix2::identity();
        defect.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `(u1 ⊗ u2)|ψ⟩`. Both operators must be unitary; anything with a
/// unitarity defect beyond [`tol::UNITARY_REJECT`] is a caller error.
pub fn apply_local(
    u1: &LocalOperator,
    u2: &LocalOperator,
    psi: &TwoQubitPure,
) -> Result<TwoQubitPure, Error> {
    for u in [u1, u2] {
        let defect = u.unitarity_defect();
        if defect > tol::UNITARY_REJECT {
            return Err(Error::NotUnitary {
                defect,
                tol: tol::UNITARY_REJECT,
            });
        }
    }
    let full = u1.matrix().kronecker(u2.matrix());
    Ok(TwoQubitPure::from_unit(full * psi.amplitudes()))
}

/// σ_z written in the basis {|n(θ)⟩, |−n(θ)⟩}:
/// `|n⟩⟨n| − |−n⟩⟨−n|`. Hermitian and unitary.
pub fn sigma_z_in_basis(theta: PolarAngle) -> LocalOperator {
    let n = polar_state(theta);
    let nb = antipodal_state(theta);
    let m = n.as_vector() * n.as_vector().adjoint() - nb.as_vector() * nb.as_vector().adjoint();
    LocalOperator(m)
}
