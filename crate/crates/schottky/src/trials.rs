//! Seeded random trials of the annulus derivative bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schottky_core::qcmod::{check_derivative_bound, core_preserving_map, fitted_target, Annulus, DerivativeBoundReport};
use schottky_core::{Complex64, Error, Result};
use serde::Serialize;

/// Relative widening of the fitted target annulus.
const TARGET_SLACK: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSummary {
    pub seed: u64,
    pub trials: usize,
    pub samples: usize,
    pub violations: usize,
    pub hypothesis_failures: usize,
    /// Largest `max |f′| / bound` over all trials.
    pub worst_ratio: f64,
}

/// One random map between round annuli: a source annulus, a core-preserving
/// Möbius map and the thinnest target annulus containing the image.
pub fn random_instance(rng: &mut impl Rng) -> Result<(schottky_core::moebius::Moebius, Annulus, Annulus)> {
    let center = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let core = rng.gen_range(-2.0f64..2.0).exp();
    let modulus = rng.gen_range(0.2..4.0);
    let source = Annulus::around(center, core, modulus)?;

    let reach = 0.95 * (-0.5 * modulus).exp();
    let alpha = Complex64::from_polar(reach * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
    let rotation = rng.gen_range(0.0..std::f64::consts::TAU);
    let invert = rng.gen_bool(0.5);
    let target_center = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let target_core = rng.gen_range(-2.0f64..2.0).exp();
    let f = core_preserving_map(&source, target_center, target_core, alpha, rotation, invert)?;

    let fitted = fitted_target(&f, &source, target_center, target_core)?;
    let target = Annulus::around(target_center, target_core, fitted.modulus() * (1.0 + TARGET_SLACK))?;
    Ok((f, source, target))
}

/// Runs `trials` seeded instances through [`check_derivative_bound`].
pub fn derivative_bound_trials(seed: u64, trials: usize, samples: usize) -> Result<(TrialSummary, Vec<DerivativeBoundReport>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = TrialSummary {
        seed,
        trials,
        samples,
        violations: 0,
        hypothesis_failures: 0,
        worst_ratio: 0.0,
    };
    let mut reports = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (f, a1, a2) = random_instance(&mut rng)?;
        match check_derivative_bound(&f, &a1, &a2, samples) {
            Ok(r) => {
                if !r.passed {
                    summary.violations += 1;
                }
                summary.worst_ratio = summary.worst_ratio.max(r.max_derivative / r.bound);
                reports.push(r);
            }
            Err(Error::HypothesisViolated(_)) => summary.hypothesis_failures += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((summary, reports))
}
