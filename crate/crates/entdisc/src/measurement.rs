//! POVMs, Born-rule probabilities, and seeded outcome sampling.
//!
//! Two measurements matter here: the two-outcome projective measurement onto
//! the Bell planes, which is the discriminating measurement for the averaged
//! ensembles, and the symmetric/antisymmetric projective measurement used by
//! the product-state baseline.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::distr::OpenClosed01;
use rand::Rng;

use crate::ensemble::{max_mod_diff, DensityMatrix4};
use crate::error::Error;
use crate::tol;
use crate::twoqubit::{bell_states, TwoQubitPure};

/// A POVM element: Hermitian with spectrum in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effect(Matrix4<Complex64>);

impl Effect {
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self, Error> {
        let herm = max_mod_diff(&matrix, &matrix.adjoint());
        if herm > tol::HERMITICITY {
            return Err(Error::InvalidEffect {
                reason: format!("hermiticity defect {herm:e}"),
            });
        }
        let eigs = matrix.symmetric_eigen().eigenvalues;
        let min = eigs.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let max = eigs.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        if min < -tol::EFFECT_EIGS || max > 1.0 + tol::EFFECT_EIGS {
            return Err(Error::InvalidEffect {
                reason: format!("eigenvalues outside [0, 1]: min {min:e}, max {max:e}"),
            });
        }
        Ok(Effect(matrix))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }
}

/// An ordered, labeled set of effects resolving the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<Effect>,
    labels: Vec<String>,
}

impl Povm {
    pub fn new(effects: Vec<Effect>, labels: Vec<String>) -> Result<Self, Error> {
        assert_eq!(effects.len(), labels.len(), "one label per effect");
        let mut sum = Matrix4::<Complex64>::zeros();
        for e in &effects {
            sum += e.matrix();
        }
        let defect = max_mod_diff(&sum, &Matrix4::identity());
        if defect > tol::COMPLETENESS {
            return Err(Error::IncompletePovm {
                defect,
                tol: tol::COMPLETENESS,
            });
        }
        Ok(Povm { effects, labels })
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }
}

/// The two-outcome projective measurement onto the Bell planes:
/// `E1 = |φ⁺⟩⟨φ⁺| + |ψ⁻⟩⟨ψ⁻|` and `E2 = |φ⁻⟩⟨φ⁻| + |ψ⁺⟩⟨ψ⁺|`.
pub fn bell_plane_povm() -> Povm {
    let b = bell_states();
    let e1 = Effect::new(b.phi_plus.projector() + b.psi_minus.projector())
        .expect("rank-2 Bell-plane projector is a valid effect");
    let e2 = Effect::new(b.phi_minus.projector() + b.psi_plus.projector())
        .expect("rank-2 Bell-plane projector is a valid effect");
    Povm::new(vec![e1, e2], vec!["E1".into(), "E2".into()])
        .expect("the two Bell planes resolve the identity")
}

/// Projective measurement onto the antisymmetric subspace (the singlet line)
/// and its symmetric complement; outcome order ("anti", "sym").
pub fn sym_antisym_povm() -> Povm {
    let anti = bell_states().psi_minus.projector();
    let sym = Matrix4::identity() - anti;
    let effects = vec![
        Effect::new(anti).expect("singlet projector is a valid effect"),
        Effect::new(sym).expect("symmetric projector is a valid effect"),
    ];
    Povm::new(effects, vec!["anti".into(), "sym".into()])
        .expect("projector and complement resolve the identity")
}

fn clamp_probability(p: f64) -> f64 {
    debug_assert!(p >= tol::PROB_FLOOR, "probability {p} below floor");
    p.clamp(0.0, 1.0)
}

/// Born rule on a mixed state: `pᵢ = Tr[Eᵢ ρ]`. Roundoff negatives are zeroed.
pub fn outcome_probabilities(povm: &Povm, rho: &DensityMatrix4) -> Vec<f64> {
    povm.effects()
        .iter()
        .map(|e| clamp_probability((e.matrix() * rho.matrix()).trace().re))
        .collect()
}

/// Born rule on a pure state: `pᵢ = ⟨ψ|Eᵢ|ψ⟩`.
pub fn outcome_probabilities_pure(povm: &Povm, psi: &TwoQubitPure) -> Vec<f64> {
    povm.effects()
        .iter()
        .map(|e| {
            let p = psi.amplitudes().dotc(&(e.matrix() * psi.amplitudes())).re;
            clamp_probability(p)
        })
        .collect()
}

/// Draws an outcome index distributed according to `probs`.
///
/// The uniform variate is taken from (0, 1] and compared with `u ≤ cumsum`,
/// so an outcome of probability zero (or below 2⁻⁵³) is never selected. The
/// exact-discrimination runs rely on this.
pub fn sample_outcome<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Result<usize, Error> {
    let mut sum = 0.0;
    for (index, &p) in probs.iter().enumerate() {
        if p < tol::PROB_FLOOR {
            return Err(Error::NegativeProbability { index, value: p });
        }
        sum += p.max(0.0);
    }
    if (sum - 1.0).abs() > tol::PROB_SUM {
        return Err(Error::ProbabilitySum {
            sum,
            tol: tol::PROB_SUM,
        });
    }

    let u: f64 = rng.sample(OpenClosed01);
    let mut cum = 0.0;
    let mut last_positive = 0;
    for (index, &p) in probs.iter().enumerate() {
        let p = p.max(0.0);
        if p > 0.0 {
            last_positive = index;
        }
        cum += p;
        if u <= cum {
            return Ok(index);
        }
    }
    // u overshot the accumulated sum by roundoff.
    Ok(last_positive)
}
