use num_complex::Complex64;

use crate::math::{cos, exp, log, sin, sqrt, TAU};
use crate::moebius::{Moebius, OrientedCircle, SpherePoint};
use crate::{Error, Result};

/// Radial tolerance for the sampled hypotheses of [`check_derivative_bound`].
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-6;

/// Slack added to the bound before a sample counts as a violation.
pub const BOUND_SLACK: f64 = 1e-9;

const RADIAL_LEVELS: usize = 9;

/// The round annulus `{r1 < |z − center| < r2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    center: Complex64,
    r1: f64,
    r2: f64,
}

impl Annulus {
    pub fn new(center: Complex64, r1: f64, r2: f64) -> Result<Self> {
        if !(r1 > 0.0) || !r2.is_finite() || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::BadRadius(r1));
        }
        if !(r2 > r1) {
            return Err(Error::BadParameter("outer radius must exceed inner radius"));
        }
        Ok(Annulus { center, r1, r2 })
    }

    /// Annulus of the given modulus whose core circle has radius `core`.
    pub fn around(center: Complex64, core: f64, modulus: f64) -> Result<Self> {
        if !(modulus > 0.0) {
            return Err(Error::BadParameter("modulus must be positive"));
        }
        let h = exp(0.5 * modulus);
        Self::new(center, core / h, core * h)
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn inner_radius(&self) -> f64 {
        self.r1
    }

    pub fn outer_radius(&self) -> f64 {
        self.r2
    }

    /// `log(r2 / r1)`.
    pub fn modulus(&self) -> f64 {
        log(self.r2 / self.r1)
    }

    /// Radius `√(r1·r2)` of the core circle.
    pub fn core_radius(&self) -> f64 {
        sqrt(self.r1 * self.r2)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let d = (z - self.center).norm();
        d > self.r1 && d < self.r2
    }

    fn circle(&self, radius: f64) -> OrientedCircle {
        OrientedCircle::from_parts(self.center, radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeBoundReport {
    /// Largest `|f′|` over the sampled core points.
    pub max_derivative: f64,
    /// `(4M/m)·(ρ₂/ρ₁)` with `m`, `M` the source and target moduli and `ρ`
    /// the core radii.
    pub bound: f64,
    pub source_modulus: f64,
    pub target_modulus: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Samples the derivative of a Möbius map on the core circle of `a1` and
/// compares it with `(4M/m)·(ρ₂/ρ₁)`.
///
/// The hypotheses `f(A₁) ⊆ A₂` and `f(core A₁) = core A₂` are checked on a
/// polar grid before anything is reported.
pub fn check_derivative_bound(
    f: &Moebius,
    a1: &Annulus,
    a2: &Annulus,
    samples: usize,
) -> Result<DerivativeBoundReport> {
    if samples == 0 {
        return Err(Error::BadParameter("at least one sample is required"));
    }
    if let SpherePoint::Finite(p) = f.pole() {
        let d = (p - a1.center).norm();
        if d >= a1.r1 * (1.0 - HYPOTHESIS_TOLERANCE) && d <= a1.r2 * (1.0 + HYPOTHESIS_TOLERANCE) {
            return Err(Error::HypothesisViolated("the map has a pole on the source annulus"));
        }
    }
    let image_radius = |z: Complex64| -> Result<f64> {
        match f.apply_finite(z) {
            SpherePoint::Finite(w) => Ok((w - a2.center).norm()),
            SpherePoint::Infinity => Err(Error::HypothesisViolated("the map has a pole on the source annulus")),
        }
    };
    let lo = a2.r1 * (1.0 - HYPOTHESIS_TOLERANCE);
    let hi = a2.r2 * (1.0 + HYPOTHESIS_TOLERANCE);
    let ratio = a1.r2 / a1.r1;
    for level in 0..RADIAL_LEVELS {
        let t = a1.r1 * crate::math::pow(ratio, level as f64 / (RADIAL_LEVELS - 1) as f64);
        for j in 0..samples {
            let rho = image_radius(a1.circle(t).point_at(TAU * j as f64 / samples as f64))?;
            if !(rho >= lo && rho <= hi) {
                return Err(Error::HypothesisViolated("the image leaves the target annulus"));
            }
        }
    }

    let (core1, core2) = (a1.core_radius(), a2.core_radius());
    let mut max_derivative: f64 = 0.0;
    for j in 0..samples {
        let z = a1.circle(core1).point_at(TAU * j as f64 / samples as f64);
        let rho = image_radius(z)?;
        if (rho - core2).abs() > HYPOTHESIS_TOLERANCE * core2 {
            return Err(Error::HypothesisViolated("the core circle does not map to the target core"));
        }
        max_derivative = max_derivative.max(f.derivative(z).norm());
    }
    let (m, big_m) = (a1.modulus(), a2.modulus());
    let bound = 4.0 * big_m / m * core2 / core1;
    Ok(DerivativeBoundReport {
        max_derivative,
        bound,
        source_modulus: m,
        target_modulus: big_m,
        samples,
        passed: max_derivative <= bound + BOUND_SLACK,
    })
}

/// A Möbius map sending the core circle of `source` onto the circle of
/// radius `core` about `center`.
///
/// In normalized coordinates it is the disc automorphism
/// `w ↦ e^{iφ}(w − α)/(1 − ᾱw)`, optionally followed by `w ↦ 1/w`. The
/// source annulus stays pole-free when `|α| < e^{−mod/2}`.
pub fn core_preserving_map(
    source: &Annulus,
    center: Complex64,
    core: f64,
    alpha: Complex64,
    rotation: f64,
    invert: bool,
) -> Result<Moebius> {
    if !(alpha.norm() < 1.0) {
        return Err(Error::OutOfDomain {
            value: alpha.norm(),
            domain: "|α| < 1",
        });
    }
    if !(core > 0.0) || !core.is_finite() {
        return Err(Error::BadRadius(core));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let rho1 = source.core_radius();
    let to_unit = Moebius::new(one, -source.center, zero, Complex64::new(rho1, 0.0))?;
    let blaschke = Moebius::new(one, -alpha, -alpha.conj(), one)?;
    let spin = Moebius::scaling(Complex64::new(cos(rotation), sin(rotation)))?;
    let from_unit = Moebius::new(Complex64::new(core, 0.0), center, zero, one)?;
    let mut g = spin.compose(&blaschke);
    if invert {
        g = Moebius::inversion().compose(&g);
    }
    Ok(from_unit.compose(&g).compose(&to_unit))
}

/// Thinnest annulus about `center` with core radius `core` that contains
/// `f(source)`, computed from the exact images of the two boundary circles.
pub fn fitted_target(f: &Moebius, source: &Annulus, center: Complex64, core: f64) -> Result<Annulus> {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for r in [source.r1, source.r2] {
        let image = f.apply_circle(&source.circle(r))?;
        let offset = (image.center() - center).norm();
        if offset >= image.radius() {
            return Err(Error::HypothesisViolated("the image does not separate the target center"));
        }
        lo = lo.min(image.radius() - offset);
        hi = hi.max(image.radius() + offset);
    }
    let half = log(core / lo).max(log(hi / core));
    if !(half > 0.0) {
        return Err(Error::HypothesisViolated("the core circle does not separate the image"));
    }
    Annulus::around(center, core, 2.0 * half)
}
