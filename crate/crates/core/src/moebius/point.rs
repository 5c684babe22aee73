use num_complex::Complex64;

use crate::math::hypot;

/// A point of the Riemann sphere: a finite complex number or `∞`.
///
/// Finite points always carry finite coordinates; constructors send overflow
/// and NaN to [`SpherePoint::Infinity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn new(re: f64, im: f64) -> Self {
        Self::finite(Complex64::new(re, im))
    }

    pub fn finite(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance; the sphere has diameter 2.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        chordal_distance(*self, *other)
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::finite(z)
    }
}

impl From<f64> for SpherePoint {
    fn from(x: f64) -> Self {
        SpherePoint::new(x, 0.0)
    }
}

/// `2|z-w| / √((1+|z|²)(1+|w|²))`, extended to `∞` by continuity.
pub fn chordal_distance(z: SpherePoint, w: SpherePoint) -> f64 {
    match (z, w) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Finite(z), SpherePoint::Infinity)
        | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / hypot(1.0, z.norm()),
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            2.0 * (z - w).norm() / (hypot(1.0, z.norm()) * hypot(1.0, w.norm()))
        }
    }
}
