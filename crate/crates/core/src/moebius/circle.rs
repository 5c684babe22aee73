use num_complex::Complex64;

use super::point::{chordal_distance, SpherePoint};
use crate::math::{acosh, cos, hypot, sin, sqrt};
use crate::tol;
use crate::{Error, Result};

/// A Euclidean circle whose interior is the bounded disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedCircle {
    center: Complex64,
    radius: f64,
}

/// Distance between the hyperbolic planes spanned by two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneDistance {
    /// Signed inversive distance `(d² - r₁² - r₂²) / (2 r₁ r₂)`; at least 1
    /// for disjoint discs and at most -1 for nested ones.
    pub inversive: f64,
    /// `arccosh |inversive|`.
    pub hyperbolic: f64,
}

impl OrientedCircle {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.re.is_finite() || !center.im.is_finite()
        {
            return Err(Error::BadRadius(radius));
        }
        Ok(OrientedCircle { center, radius })
    }

    pub(crate) fn from_parts(center: Complex64, radius: f64) -> Self {
        OrientedCircle { center, radius }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Point at angle `theta` measured from the center.
    pub fn point_at(&self, theta: f64) -> Complex64 {
        self.center + Complex64::new(cos(theta), sin(theta)) * self.radius
    }

    /// Signed distance from `z` to the circle; negative inside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    pub fn contains(&self, z: SpherePoint) -> bool {
        match z {
            SpherePoint::Finite(z) => self.signed_distance(z) < 0.0,
            SpherePoint::Infinity => false,
        }
    }

    /// Euclidean gap between the closed discs; negative when they meet.
    pub fn gap(&self, other: &OrientedCircle) -> f64 {
        (self.center - other.center).norm() - self.radius - other.radius
    }

    /// Whether the closed disc of `other` lies in the open disc of `self`.
    pub fn strictly_contains(&self, other: &OrientedCircle) -> bool {
        (self.center - other.center).norm() + other.radius < self.radius
    }

    /// Chordal diameter of the circle, in `(0, 2]`.
    ///
    /// After rotating the center onto the positive real axis the extremal pair
    /// is `|c| - r` and `|c| + r`.
    pub fn spherical_diameter(&self) -> f64 {
        let m = self.center.norm();
        let x1 = m - self.radius;
        let x2 = m + self.radius;
        let d = 4.0 * self.radius / (hypot(1.0, x1) * hypot(1.0, x2));
        d.min(2.0)
    }

    /// Whether the circle projects to a great circle: `r² = 1 + |c|²`.
    pub fn is_great_circle(&self) -> bool {
        let lhs = self.radius * self.radius;
        let rhs = 1.0 + self.center.norm_sqr();
        (lhs - rhs).abs() <= tol::GEOMETRIC * rhs
    }

    /// Largest chordal distance from `p` to a point of the circle, sampled.
    pub fn chordal_reach(&self, p: SpherePoint, samples: usize) -> f64 {
        (0..samples.max(4))
            .map(|k| {
                let theta = crate::math::TAU * k as f64 / samples.max(4) as f64;
                chordal_distance(SpherePoint::finite(self.point_at(theta)), p)
            })
            .fold(0.0, f64::max)
    }

    /// Signed inversive distance, evaluated to avoid cancellation near tangency.
    pub fn inversive_distance(&self, other: &OrientedCircle) -> f64 {
        let d = (self.center - other.center).norm();
        let (r1, r2) = (self.radius, other.radius);
        let p = 2.0 * r1 * r2;
        if d >= r1 + r2 {
            1.0 + (d - r1 - r2) * (d + r1 + r2) / p
        } else {
            let s = (r1 - r2).abs();
            -1.0 + (d - s) * (d + s) / p
        }
    }

    /// Distance between the spanning planes in hyperbolic 3-space.
    ///
    /// Accepts disjoint or nested circles; intersecting or tangent circles fail
    /// with [`Error::DiscsOverlapOrNested`].
    pub fn plane_distance(&self, other: &OrientedCircle) -> Result<PlaneDistance> {
        let inversive = self.inversive_distance(other);
        let excess = inversive.abs() - 1.0;
        if !(excess >= tol::INVERSIVE_SLACK) {
            return Err(Error::DiscsOverlapOrNested { inversive });
        }
        // acosh(1 + x) = log1p(x + √(x(2 + x))) keeps precision for small x.
        let hyperbolic = if excess < 1.0 {
            libm::log1p(excess + sqrt(excess * (2.0 + excess)))
        } else {
            acosh(1.0 + excess)
        };
        Ok(PlaneDistance {
            inversive,
            hyperbolic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    fn circle(x: f64, y: f64, r: f64) -> OrientedCircle {
        OrientedCircle::new(Complex64::new(x, y), r).unwrap()
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(OrientedCircle::new(Complex64::new(0.0, 0.0), 0.0).is_err());
        assert!(OrientedCircle::new(Complex64::new(0.0, 0.0), -1.0).is_err());
        assert!(OrientedCircle::new(Complex64::new(0.0, 0.0), f64::NAN).is_err());
    }

    #[test]
    fn spherical_diameter_examples() {
        assert!((circle(0.0, 0.0, 1.0).spherical_diameter() - 2.0).abs() < 1e-15);
        assert!((circle(0.0, 0.0, 0.5).spherical_diameter() - 1.6).abs() < 1e-15);
        let c = circle(1.5, 0.0, 0.3);
        let rotated = circle(1.5 * 0.6, 1.5 * 0.8, 0.3);
        assert!((c.spherical_diameter() - rotated.spherical_diameter()).abs() < 1e-15);
    }

    #[test]
    fn great_circles_have_diameter_two() {
        let r = sqrt(1.0 + 4.0);
        let g = circle(2.0, 0.0, r);
        assert!(g.is_great_circle());
        assert!((g.spherical_diameter() - 2.0).abs() < 1e-12);
        assert!(!circle(2.0, 0.0, 1.0).is_great_circle());
    }

    #[test]
    fn plane_distance_examples() {
        let pd = circle(0.0, 0.0, 1.0).plane_distance(&circle(0.0, 0.0, E)).unwrap();
        assert!((pd.hyperbolic - 1.0).abs() < 1e-14);
        let pd = circle(-2.0, 0.0, 1.0).plane_distance(&circle(2.0, 0.0, 1.0)).unwrap();
        assert!((pd.inversive - 7.0).abs() < 1e-14);
        assert!((pd.hyperbolic - acosh(7.0)).abs() < 1e-14);
        assert!((pd.hyperbolic - 2.633_915_793_849_634).abs() < 1e-12);
        let err = circle(0.0, 0.0, 2.0).plane_distance(&circle(1.0, 0.0, 1.0));
        assert!(matches!(err, Err(Error::DiscsOverlapOrNested { .. })));
        let err = circle(0.0, 0.0, 1.0).plane_distance(&circle(1.0, 0.0, 1.0));
        assert!(matches!(err, Err(Error::DiscsOverlapOrNested { .. })));
    }

    #[test]
    fn inversive_distance_is_symmetric() {
        let a = circle(0.3, -1.0, 0.7);
        let b = circle(4.0, 2.0, 1.9);
        assert!((a.inversive_distance(&b) - b.inversive_distance(&a)).abs() < 1e-14);
    }
}
