//! Single-qubit states on the Bloch sphere.
//!
//! The discrimination scheme restricts the local directions to the polar great
//! circle (the x–z plane), where the amplitudes are real:
//! `|n(θ)⟩ = (cos(θ/2), sin(θ/2))`. The full sphere is only needed for the
//! product-state baseline experiment.

use nalgebra::Vector2;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{PI, TAU};

use crate::error::Error;
use crate::tol;

/// Reduces an angle into [0, 2π).
pub(crate) fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly 2π.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Angle on the polar great circle, reduced into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarAngle(f64);

impl PolarAngle {
    pub fn new(theta: f64) -> Self {
        PolarAngle(reduce_angle(theta))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The opposite Bloch direction, θ + π reduced mod 2π.
    pub fn antipode(self) -> Self {
        PolarAngle::new(self.0 + PI)
    }
}

/// Point on the full Bloch sphere: polar angle in [0, π], azimuth in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Self {
        SpherePoint {
            theta: theta.clamp(0.0, PI),
            phi: reduce_angle(phi),
        }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }

    /// The antipodal point (π − θ, φ + π).
    pub fn antipode(self) -> Self {
        SpherePoint::new(PI - self.theta, self.phi + PI)
    }
}

/// Normalized single-qubit amplitude pair (|0⟩ and |1⟩ components).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitVector(Vector2<Complex64>);

impl QubitVector {
    /// Checked constructor; rejects vectors whose norm strays from 1.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self, Error> {
        let v = Vector2::new(a0, a1);
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized {
                norm,
                tol: tol::NORM,
            });
        }
        Ok(QubitVector(v))
    }

    /// For constructors that guarantee normalization analytically.
    pub(crate) fn from_unit(v: Vector2<Complex64>) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-9);
        QubitVector(v)
    }

    pub fn a0(&self) -> Complex64 {
        self.0[0]
    }

    pub fn a1(&self) -> Complex64 {
        self.0[1]
    }

    pub fn as_vector(&self) -> &Vector2<Complex64> {
        &self.0
    }
}

/// `|n(θ)⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`; purely real.
pub fn polar_state(theta: PolarAngle) -> QubitVector {
    let h = theta.radians() / 2.0;
    QubitVector::from_unit(Vector2::new(
        Complex64::new(h.cos(), 0.0),
        Complex64::new(h.sin(), 0.0),
    ))
}

/// The state at θ + π, evaluated without reducing the angle:
/// `|−n(θ)⟩ = −sin(θ/2)|0⟩ + cos(θ/2)|1⟩`.
///
/// Orthogonal to `polar_state(theta)` for every θ and continuous in θ, which
/// keeps ensemble averages over the circle free of section artifacts. Reducing
/// θ + π into [0, 2π) first would flip the overall sign on half the circle.
pub fn antipodal_state(theta: PolarAngle) -> QubitVector {
    let h = theta.radians() / 2.0;
    QubitVector::from_unit(Vector2::new(
        Complex64::new(-h.sin(), 0.0),
        Complex64::new(h.cos(), 0.0),
    ))
}

/// `(cos(θ/2), e^{iφ} sin(θ/2))` for a point on the full sphere.
pub fn sphere_state(p: SpherePoint) -> QubitVector {
    let h = p.theta() / 2.0;
    QubitVector::from_unit(Vector2::new(
        Complex64::new(h.cos(), 0.0),
        Complex64::from_polar(h.sin(), p.phi()),
    ))
}

/// Uniform draw from the polar great circle.
pub fn sample_polar<R: Rng + ?Sized>(rng: &mut R) -> PolarAngle {
    PolarAngle::new(TAU * rng.random::<f64>())
}

/// Area-uniform draw from the full sphere: cos θ uniform on [−1, 1],
/// φ uniform on [0, 2π).
pub fn sample_sphere<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    let cos_theta = 1.0 - 2.0 * rng.random::<f64>();
    let phi = TAU * rng.random::<f64>();
    SpherePoint::new(cos_theta.clamp(-1.0, 1.0).acos(), phi)
}

/// Inner product ⟨a|b⟩ = Σ conj(aᵢ)·bᵢ.
pub fn overlap(a: &QubitVector, b: &QubitVector) -> Complex64 {
    a.as_vector().dotc(b.as_vector())
}
