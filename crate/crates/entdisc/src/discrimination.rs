//! The discrimination game: analytic payoffs, phase optimization, seeded
//! Monte-Carlo experiments, and the product-state baseline.
//!
//! Every run is a pure function of its configuration. Trials are grouped into
//! fixed-size partitions, each with its own counter-mode RNG stream derived
//! from `(seed, partition index)`, so the report is byte-identical no matter
//! how partitions are scheduled across threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ensemble::{q_of, rho_analytic, rho_quadrature};
use crate::error::Error;
use crate::measurement::{
    bell_plane_povm, outcome_probabilities_pure, sample_outcome, sym_antisym_povm, Povm,
};
use crate::qubit::{sample_polar, sample_sphere, sphere_state};
use crate::twoqubit::{schmidt_state, tensor, SchmidtParams};

/// Trials per RNG partition. Worker threads claim whole partitions, so the
/// success count is independent of the thread count.
pub const PARTITION_TRIALS: u64 = 4096;

/// Parameters of one two-ensemble discrimination experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub prior1: f64,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), Error> {
        for (name, v) in [
            ("alpha1", self.alpha1),
            ("beta1", self.beta1),
            ("alpha2", self.alpha2),
            ("beta2", self.beta2),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite")));
            }
        }
        if !(0.0..=1.0).contains(&self.prior1) {
            return Err(Error::InvalidConfig(format!(
                "prior1 must lie in [0, 1], got {}",
                self.prior1
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Configuration of a baseline run, echoed in its report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineConfig {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ConfigEcho {
    Discrimination(ExperimentConfig),
    Baseline(BaselineConfig),
}

/// Outcome of a Monte-Carlo run.
///
/// `std_error` is the binomial estimate `sqrt(p̂(1 − p̂)/trials)`; it is zero
/// for a run with no misclassifications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminationReport {
    pub analytic_payoff: f64,
    pub empirical_payoff: f64,
    pub trials: u64,
    pub std_error: f64,
    pub seed: u64,
    pub config_echo: ConfigEcho,
}

/// One row of the optimal-payoff surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha1: f64,
    pub alpha2: f64,
    pub optimal_payoff: f64,
}

/// Success probability of the fixed guessing rule at the given configuration:
/// claim the first ensemble on the second outcome and vice versa, which gives
/// `p₁(1 − q₁)/2 + p₂(1 + q₂)/2` with `qⱼ = sin αⱼ cos βⱼ`.
///
/// At equal priors this is `1/2 + (q₂ − q₁)/4`.
pub fn payoff_analytic(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64, prior1: f64) -> f64 {
    let q1 = q_of(alpha1, beta1).value();
    let q2 = q_of(alpha2, beta2).value();
    prior1 * (1.0 - q1) / 2.0 + (1.0 - prior1) * (1.0 + q2) / 2.0
}

/// Equal-prior payoff maximized over both phases:
/// `1/2 + |sin α₁ + sin α₂|/4`.
pub fn payoff_optimal(alpha1: f64, alpha2: f64) -> f64 {
    0.5 + (alpha1.sin() + alpha2.sin()).abs() / 4.0
}

/// A phase pair attaining `payoff_optimal`, with the payoff it yields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaOptimum {
    pub beta1: f64,
    pub beta2: f64,
    pub payoff: f64,
}

/// Picks phases that drive `q₁` down and `q₂` up: `cos β₁ = −sgn(sin α₁)`,
/// `cos β₂ = sgn(sin α₂)`. Flat directions (`sin α = 0`) fall back to the
/// `(π, 0)` convention.
pub fn optimize_beta(alpha1: f64, alpha2: f64) -> BetaOptimum {
    let beta1 = if alpha1.sin() >= 0.0 { PI } else { 0.0 };
    let beta2 = if alpha2.sin() >= 0.0 { 0.0 } else { PI };
    BetaOptimum {
        beta1,
        beta2,
        payoff: payoff_analytic(alpha1, beta1, alpha2, beta2, 0.5),
    }
}

fn run_partition(config: &ExperimentConfig, povm: &Povm, partition: u64) -> u64 {
    let lo = partition * PARTITION_TRIALS;
    let hi = (lo + PARTITION_TRIALS).min(config.trials);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(partition);

    let mut successes = 0u64;
    for _ in lo..hi {
        let pick: f64 = rng.random();
        let (alpha, beta, truth) = if pick < config.prior1 {
            (config.alpha1, config.beta1, 0)
        } else {
            (config.alpha2, config.beta2, 1)
        };
        let theta_n = sample_polar(&mut rng);
        let theta_m = sample_polar(&mut rng);
        let psi = schmidt_state(SchmidtParams::new(alpha, beta, theta_n, theta_m));
        let probs = outcome_probabilities_pure(povm, &psi);
        let outcome = sample_outcome(&probs, &mut rng).expect("Born probabilities are normalized");
        // The first outcome is the plane of weight (1 + q)/2, the likelier one
        // for the second configuration under the q₁ ≤ q₂ convention.
        let guess = 1 - outcome;
        if guess == truth {
            successes += 1;
        }
    }
    successes
}

fn report(config: &ExperimentConfig, successes: u64) -> DiscriminationReport {
    let empirical = successes as f64 / config.trials as f64;
    DiscriminationReport {
        analytic_payoff: payoff_analytic(
            config.alpha1,
            config.beta1,
            config.alpha2,
            config.beta2,
            config.prior1,
        ),
        empirical_payoff: empirical,
        trials: config.trials,
        std_error: (empirical * (1.0 - empirical) / config.trials as f64).sqrt(),
        seed: config.seed,
        config_echo: ConfigEcho::Discrimination(*config),
    }
}

/// Runs the discrimination experiment on the current thread.
pub fn run_discrimination_mc(config: &ExperimentConfig) -> Result<DiscriminationReport, Error> {
    run_discrimination_mc_parallel(config, 1)
}

/// Runs the discrimination experiment on `threads` worker threads. Worker `w`
/// processes partitions `w, w + threads, w + 2·threads, …`; reports are
/// identical for every thread count.
pub fn run_discrimination_mc_parallel(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<DiscriminationReport, Error> {
    config.validate()?;
    if threads == 0 {
        return Err(Error::InvalidConfig("threads must be ≥ 1".into()));
    }
    let povm = bell_plane_povm();
    let partitions = config.trials.div_ceil(PARTITION_TRIALS);

    let successes: u64 = if threads == 1 {
        (0..partitions)
            .map(|p| run_partition(config, &povm, p))
            .sum()
    } else {
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads as u64)
                .map(|w| {
                    let povm = &povm;
                    scope.spawn(move || {
                        (w..partitions)
                            .step_by(threads)
                            .map(|p| run_partition(config, povm, p))
                            .sum::<u64>()
                    })
                })
                .collect();
            workers
                .into_iter()
                .map(|h| h.join().expect("worker thread panicked"))
                .sum()
        })
    };

    Ok(report(config, successes))
}

/// The product-state baseline: a uniformly random axis `n`, an equal-prior
/// choice between `|n, −n⟩` and `|n, n⟩`, and the symmetric/antisymmetric
/// measurement. The antisymmetric outcome claims the antipodal preparation.
///
/// Its analytic success probability is 3/4, and conditioned on the aligned
/// preparation the guess is always right: `|n, n⟩` has no singlet component.
pub fn run_pryde_baseline(trials: u64, seed: u64) -> Result<DiscriminationReport, Error> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be ≥ 1".into()));
    }
    let povm = sym_antisym_povm();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut successes = 0u64;
    for _ in 0..trials {
        let n = sample_sphere(&mut rng);
        let pick: f64 = rng.random();
        let truth = if pick < 0.5 { 0 } else { 1 };
        let psi = if truth == 0 {
            tensor(&sphere_state(n), &sphere_state(n.antipode()))
        } else {
            tensor(&sphere_state(n), &sphere_state(n))
        };
        let probs = outcome_probabilities_pure(&povm, &psi);
        let outcome = sample_outcome(&probs, &mut rng).expect("Born probabilities are normalized");
        if outcome == truth {
            successes += 1;
        }
    }

    let empirical = successes as f64 / trials as f64;
    Ok(DiscriminationReport {
        analytic_payoff: 0.75,
        empirical_payoff: empirical,
        trials,
        std_error: (empirical * (1.0 - empirical) / trials as f64).sqrt(),
        seed,
        config_echo: ConfigEcho::Baseline(BaselineConfig { trials, seed }),
    })
}

/// Tabulates `payoff_optimal` on a uniform `alpha_steps × alpha_steps` grid
/// over `[0, π]²`, row-major in `(α₁, α₂)`.
pub fn payoff_sweep(alpha_steps: usize) -> Vec<SweepRow> {
    assert!(alpha_steps >= 2, "alpha_steps must be ≥ 2");
    let h = PI / (alpha_steps - 1) as f64;
    let mut rows = Vec::with_capacity(alpha_steps * alpha_steps);
    for i in 0..alpha_steps {
        for j in 0..alpha_steps {
            let alpha1 = i as f64 * h;
            let alpha2 = j as f64 * h;
            rows.push(SweepRow {
                alpha1,
                alpha2,
                optimal_payoff: payoff_optimal(alpha1, alpha2),
            });
        }
    }
    rows
}

/// Largest entrywise deviation between the quadrature average and the closed
/// form at the same `(α, β)`.
pub fn verify_rho(alpha: f64, beta: f64, grid_points: usize) -> f64 {
    rho_quadrature(alpha, beta, grid_points).max_abs_diff(&rho_analytic(q_of(alpha, beta)))
}
