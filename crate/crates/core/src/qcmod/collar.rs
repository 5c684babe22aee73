use alloc::vec::Vec;

use num_complex::Complex64;

use super::quad::adaptive_simpson;
use crate::math::{cos, sin, TAU};
use crate::{Error, Result};

/// Absolute tolerance of the angular quadrature.
pub const QUADRATURE_TOLERANCE: f64 = 1e-13;

/// Step of the central differences used for the Beltrami coefficient.
pub const DIFFERENCE_STEP: f64 = 1e-4;

/// Points per period used to check that `ρ` stays positive.
pub const PROFILE_SAMPLES: usize = 4096;

/// A circle diffeomorphism `h` with `h(1) = 1`, given by its derivative
/// modulus `ρ(θ) = 1 + Σₖ (aₖ cos kθ + bₖ sin kθ)`.
///
/// The constant term is fixed at 1, so `∫₀^{2π} ρ = 2π` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryProfile {
    coefficients: Vec<(f64, f64)>,
}

impl BoundaryProfile {
    /// `coefficients[k − 1] = (aₖ, bₖ)`.
    pub fn new(coefficients: Vec<(f64, f64)>) -> Result<Self> {
        if coefficients.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::BadParameter("profile coefficients must be finite"));
        }
        Ok(BoundaryProfile { coefficients })
    }

    pub fn identity() -> Self {
        BoundaryProfile {
            coefficients: Vec::new(),
        }
    }

    /// `ρ(θ) = 1 + amplitude·cos θ`.
    pub fn cosine(amplitude: f64) -> Result<Self> {
        Self::new(alloc::vec![(amplitude, 0.0)])
    }

    pub fn coefficients(&self) -> &[(f64, f64)] {
        &self.coefficients
    }

    pub fn rho(&self, theta: f64) -> f64 {
        1.0 + self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let k = (i + 1) as f64;
                a * cos(k * theta) + b * sin(k * theta)
            })
            .sum::<f64>()
    }

    /// `arg h(e^{iθ}) = ∫₀^θ ρ`, from the termwise antiderivative.
    pub fn boundary_angle(&self, theta: f64) -> f64 {
        theta
            + self
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    let k = (i + 1) as f64;
                    (a * sin(k * theta) + b * (1.0 - cos(k * theta))) / k
                })
                .sum::<f64>()
    }

    /// `h(e^{iθ})`.
    pub fn boundary_map(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.boundary_angle(theta))
    }

    /// Minimum of `ρ` over `samples` equally spaced angles.
    pub fn min_rho(&self, samples: usize) -> f64 {
        (0..samples.max(1))
            .map(|j| self.rho(TAU * j as f64 / samples.max(1) as f64))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Interpolation `H(te^{iθ}) = t·exp(iΦ(t, θ))` on `1 ≤ |z| ≤ r` between `h`
/// on the unit circle and the identity on `|z| = r`, where
/// `Φ = θ + w(t)·∫₀^θ (ρ − 1)` and `w(t) = (r − t)/(r − 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollarMap {
    profile: BoundaryProfile,
    r: f64,
}

impl CollarMap {
    pub fn profile(&self) -> &BoundaryProfile {
        &self.profile
    }

    pub fn outer_radius(&self) -> f64 {
        self.r
    }

    fn weight(&self, t: f64) -> f64 {
        (self.r - t) / (self.r - 1.0)
    }

    /// `∫₀^θ (ρ − 1)` by adaptive Simpson quadrature.
    pub fn excess(&self, theta: f64) -> f64 {
        adaptive_simpson(&|s| self.rho_minus_one(s), 0.0, theta, QUADRATURE_TOLERANCE)
    }

    fn rho_minus_one(&self, theta: f64) -> f64 {
        self.profile.rho(theta) - 1.0
    }

    pub fn angle(&self, t: f64, theta: f64) -> f64 {
        theta + self.weight(t) * self.excess(theta)
    }

    pub fn eval(&self, t: f64, theta: f64) -> Complex64 {
        Complex64::from_polar(t, self.angle(t, theta))
    }

    /// `μ = H_z̄ / H_z` from central differences in `(t, θ)`.
    pub fn beltrami(&self, t: f64, theta: f64) -> Complex64 {
        let (dz, dzbar) = self.wirtinger(t, theta, self.excess(theta), self.excess_pair(theta));
        dzbar / dz
    }

    /// `μ` from the exact partials of `Φ`:
    /// `e^{2iθ}(1 + itΦ_t − Φ_θ)/(1 + itΦ_t + Φ_θ)`.
    pub fn beltrami_exact(&self, t: f64, theta: f64) -> Complex64 {
        let phi_t = -self.excess(theta) / (self.r - 1.0);
        let phi_theta = 1.0 + self.weight(t) * self.rho_minus_one(theta);
        let i_t_phi = Complex64::new(1.0, t * phi_t);
        Complex64::from_polar(1.0, 2.0 * theta) * (i_t_phi - phi_theta) / (i_t_phi + phi_theta)
    }

    fn excess_pair(&self, theta: f64) -> (f64, f64) {
        (self.excess(theta - DIFFERENCE_STEP), self.excess(theta + DIFFERENCE_STEP))
    }

    /// `(H_z, H_z̄)` given the quadrature values at `θ` and `θ ± h`.
    fn wirtinger(&self, t: f64, theta: f64, g: f64, (g_lo, g_hi): (f64, f64)) -> (Complex64, Complex64) {
        let h = DIFFERENCE_STEP;
        let at = |t: f64, th: f64, g: f64| Complex64::from_polar(t, th + self.weight(t) * g);
        let d_t = (at(t + h, theta, g) - at(t - h, theta, g)) / (2.0 * h);
        let d_theta = (at(t, theta + h, g_hi) - at(t, theta - h, g_lo)) / (2.0 * h);
        let rot = Complex64::from_polar(1.0, -theta);
        let i_over_t = Complex64::new(0.0, 1.0 / t);
        let dz = 0.5 * rot * (d_t - i_over_t * d_theta);
        let dzbar = 0.5 * rot.conj() * (d_t + i_over_t * d_theta);
        (dz, dzbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarSample {
    pub t: f64,
    pub theta: f64,
    pub beltrami_abs: f64,
    pub jacobian: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollarReport {
    pub radial_points: usize,
    pub angular_points: usize,
    /// Largest finite-difference `|μ|` on the grid.
    pub max_beltrami: f64,
    /// `(1 + max|μ|)/(1 − max|μ|)`.
    pub dilatation: f64,
    /// Largest gap between the finite-difference and exact `|μ|`.
    pub beltrami_discrepancy: f64,
    pub min_jacobian: f64,
    /// `max |H(e^{iθ}) − h(e^{iθ})|` against the closed-form boundary map.
    pub inner_boundary_error: f64,
    /// `max |H(re^{iθ}) − re^{iθ}|`.
    pub outer_boundary_error: f64,
    pub min_angular_derivative: f64,
    pub samples: Vec<CollarSample>,
}

/// Builds the collar map for `profile` on `1 ≤ |z| ≤ r` and measures it on a
/// `radial × angular` polar grid.
pub fn collar_interpolation(
    profile: &BoundaryProfile,
    r: f64,
    radial: usize,
    angular: usize,
) -> Result<(CollarMap, CollarReport)> {
    if !(r > 1.0 + 1e-6) || !r.is_finite() {
        return Err(Error::OutOfDomain {
            value: r,
            domain: "(1 + 1e-6, ∞)",
        });
    }
    if radial < 2 || angular < 1 {
        return Err(Error::BadParameter("the grid needs two radii and one angle"));
    }
    // The angular derivative w·ρ + (1 − w) is smallest at w = 1.
    let min_rho = profile.min_rho(PROFILE_SAMPLES.max(angular));
    if !(min_rho > 0.0) {
        return Err(Error::NotAHomeomorphism {
            min_derivative: min_rho,
        });
    }
    let map = CollarMap {
        profile: profile.clone(),
        r,
    };

    let mut report = CollarReport {
        radial_points: radial,
        angular_points: angular,
        max_beltrami: 0.0,
        dilatation: 1.0,
        beltrami_discrepancy: 0.0,
        min_jacobian: f64::INFINITY,
        inner_boundary_error: 0.0,
        outer_boundary_error: 0.0,
        min_angular_derivative: min_rho.min(1.0),
        samples: Vec::with_capacity(radial * angular),
    };
    for j in 0..angular {
        let theta = TAU * j as f64 / angular as f64;
        let g = map.excess(theta);
        let pair = map.excess_pair(theta);
        report.inner_boundary_error = report
            .inner_boundary_error
            .max((Complex64::from_polar(1.0, theta + g) - profile.boundary_map(theta)).norm());
        report.outer_boundary_error = report
            .outer_boundary_error
            .max((map.eval(r, theta) - Complex64::from_polar(r, theta)).norm());
        for i in 0..radial {
            let t = 1.0 + (r - 1.0) * i as f64 / (radial - 1) as f64;
            let (dz, dzbar) = map.wirtinger(t, theta, g, pair);
            let mu = (dzbar / dz).norm();
            let jacobian = dz.norm_sqr() - dzbar.norm_sqr();
            report.max_beltrami = report.max_beltrami.max(mu);
            report.min_jacobian = report.min_jacobian.min(jacobian);
            report.beltrami_discrepancy = report
                .beltrami_discrepancy
                .max((mu - map.beltrami_exact(t, theta).norm()).abs());
            report.samples.push(CollarSample {
                t,
                theta,
                beltrami_abs: mu,
                jacobian,
            });
        }
    }
    report.dilatation = (1.0 + report.max_beltrami) / (1.0 - report.max_beltrami);
    Ok((map, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    #[test]
    fn identity_profile() {
        let (map, rep) = collar_interpolation(&BoundaryProfile::identity(), 2.0, 16, 16).unwrap();
        assert!((map.eval(1.5, 1.0) - Complex64::from_polar(1.5, 1.0)).norm() < 1e-15);
        assert!(rep.max_beltrami < 1e-9);
        assert!((rep.dilatation - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cosine_profile_matches_closed_form() {
        let profile = BoundaryProfile::cosine(0.5).unwrap();
        let (map, rep) = collar_interpolation(&profile, E, 64, 64).unwrap();
        for i in 0..64 {
            let t = 1.0 + (E - 1.0) * i as f64 / 63.0;
            for j in 0..64 {
                let theta = TAU * j as f64 / 64.0;
                let w = (E - t) / (E - 1.0);
                let expected = Complex64::from_polar(t, theta + w * 0.5 * sin(theta));
                assert!((map.eval(t, theta) - expected).norm() < 1e-9);
            }
        }
        assert!(rep.inner_boundary_error < 1e-8);
        assert!(rep.outer_boundary_error < 1e-8);
        assert!(rep.max_beltrami < 1.0);
        assert!(rep.min_jacobian > 0.0);
        assert!(rep.beltrami_discrepancy < 1e-6, "{}", rep.beltrami_discrepancy);
    }

    #[test]
    fn dilatation_shrinks_with_amplitude() {
        let ks: Vec<f64> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&a| {
                let p = BoundaryProfile::cosine(a).unwrap();
                collar_interpolation(&p, 2.0, 24, 48).unwrap().1.dilatation
            })
            .collect();
        assert!(ks.windows(2).all(|w| w[0] > w[1]), "{ks:?}");
        assert!(ks[3] > 1.0 && ks[3] < 1.2);
    }

    #[test]
    fn wild_profiles_are_rejected() {
        let p = BoundaryProfile::cosine(1.5).unwrap();
        assert!(matches!(
            collar_interpolation(&p, 2.0, 8, 8),
            Err(Error::NotAHomeomorphism { .. })
        ));
        let p = BoundaryProfile::identity();
        assert!(collar_interpolation(&p, 1.0, 8, 8).is_err());
        assert!(BoundaryProfile::new(alloc::vec![(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        let p = BoundaryProfile::new(alloc::vec![(0.2, -0.1), (0.05, 0.15), (0.0, 0.02)]).unwrap();
        let (map, _) = collar_interpolation(&p, 3.0, 2, 1).unwrap();
        for j in 0..50 {
            let theta = 0.13 * j as f64;
            assert!((theta + map.excess(theta) - p.boundary_angle(theta)).abs() < 1e-11);
        }
    }
}
