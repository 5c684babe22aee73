//! Points of the Riemann sphere, Möbius transformations, oriented circles and
//! the canonical pairing of two disjoint circles.
//!
//! Configurations are normalized so that `∞` lies in the common exterior of
//! every circle; an [`OrientedCircle`] is therefore always a Euclidean circle
//! whose interior is the bounded disc. Lines are rejected rather than
//! represented.

mod circle;
mod pairing;
mod point;

use core::ops::Mul;

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

pub use circle::{OrientedCircle, PlaneDistance};
pub use pairing::pair_circles;
pub use point::{chordal_distance, SpherePoint};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A Möbius transformation `z ↦ (az + b) / (cz + d)` stored with `ad - bc = 1`.
///
/// The matrix is only defined up to sign; [`Moebius::approx_eq`] compares
/// projectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

/// Conjugacy class of a Möbius map, decided by the squared trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic,
    /// `multiplier` is the derivative at the repelling fixed point, `|multiplier| > 1`.
    Loxodromic { multiplier: Complex64 },
}

impl Classification {
    pub fn is_loxodromic(&self) -> bool {
        matches!(self, Classification::Loxodromic { .. })
    }
}

/// Fixed points of a non-identity map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoints {
    /// Parabolic maps fix exactly one point.
    Single(SpherePoint),
    /// For loxodromic maps the order is `(attracting, repelling)`.
    Pair(SpherePoint, SpherePoint),
}

impl FixedPoints {
    pub fn attracting(&self) -> SpherePoint {
        match *self {
            FixedPoints::Single(p) | FixedPoints::Pair(p, _) => p,
        }
    }
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: ONE,
        b: ZERO,
        c: ZERO,
        d: ONE,
    };

    /// Builds and normalizes `(az + b) / (cz + d)`.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        Moebius { a, b, c, d }.normalized()
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// `z ↦ z + b`.
    pub fn translation(b: Complex64) -> Self {
        Moebius {
            a: ONE,
            b,
            c: ZERO,
            d: ONE,
        }
    }

    /// `z ↦ kz`.
    pub fn scaling(k: Complex64) -> Result<Self> {
        Self::new(k, ZERO, ZERO, ONE)
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Moebius {
            a: ZERO,
            b: i,
            c: i,
            d: ZERO,
        }
    }

    /// The loxodromic (or elliptic, when `|multiplier| = 1`) map with the given
    /// fixed points whose derivative at `repelling` is `multiplier`.
    pub fn with_fixed_points(
        attracting: SpherePoint,
        repelling: SpherePoint,
        multiplier: Complex64,
    ) -> Result<Self> {
        // Frame sending `repelling` to 0 and `attracting` to ∞.
        let frame = match (attracting, repelling) {
            (SpherePoint::Infinity, SpherePoint::Finite(r)) => Self::new(ONE, -r, ZERO, ONE)?,
            (SpherePoint::Finite(a), SpherePoint::Infinity) => Self::new(ZERO, ONE, ONE, -a)?,
            (SpherePoint::Finite(a), SpherePoint::Finite(r)) => Self::new(ONE, -r, ONE, -a)?,
            (SpherePoint::Infinity, SpherePoint::Infinity) => {
                return Err(Error::BadParameter("fixed points coincide"))
            }
        };
        let s = multiplier.sqrt();
        if s.norm() == 0.0 || !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::BadParameter("multiplier must be finite and non-zero"));
        }
        let scale = Moebius {
            a: s,
            b: ZERO,
            c: ZERO,
            d: s.inv(),
        };
        frame.inverse().compose(&scale).compose(&frame).normalized()
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn trace_sq(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    fn normalized(self) -> Result<Self> {
        let det = self.det();
        let scale = self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr();
        if !(det.norm() > f64::EPSILON * scale) || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::Degenerate { det: det.norm() });
        }
        let k = det.sqrt().inv();
        Ok(Moebius {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        })
    }

    /// `self ∘ other`, renormalized.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let raw = self.compose_unnormalized(other);
        // A product of determinant-one matrices only drifts by rounding.
        raw.normalized().unwrap_or(raw)
    }

    /// `self ∘ other` without renormalization; used on hot enumeration paths
    /// where the determinant drifts only by rounding.
    pub(crate) fn compose_unnormalized(&self, o: &Moebius) -> Moebius {
        Moebius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self^n` for any integer `n`.
    pub fn power(&self, n: i64) -> Moebius {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Moebius::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `m ∘ self ∘ m⁻¹`.
    pub fn conjugate_by(&self, m: &Moebius) -> Moebius {
        m.compose(self).compose(&m.inverse())
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c == ZERO {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => self.apply_finite(z),
        }
    }

    pub fn apply_finite(&self, z: Complex64) -> SpherePoint {
        let den = self.c * z + self.d;
        if den == ZERO {
            return SpherePoint::Infinity;
        }
        SpherePoint::finite((self.a * z + self.b) / den)
    }

    /// `g⁻¹(∞)`, the point sent to infinity.
    pub fn pole(&self) -> SpherePoint {
        self.inverse().apply(SpherePoint::Infinity)
    }

    /// Complex derivative `1 / (cz + d)²` at a finite point.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        (den * den).inv()
    }

    /// Image of a circle. Fails with [`Error::ImageIsLine`] when the circle passes
    /// (within tolerance) through the pole.
    ///
    /// The interior of the result is again the bounded disc; when the pole lies
    /// inside `circle` this is the image of the exterior.
    pub fn apply_circle(&self, circle: &OrientedCircle) -> Result<OrientedCircle> {
        let z0 = circle.center();
        let r = circle.radius();
        let w = self.c * z0 + self.d;
        let cr = self.c.norm_sqr() * r * r;
        let den = w.norm_sqr() - cr;
        if den.abs() <= tol::GEOMETRIC * (w.norm_sqr() + cr) {
            return Err(Error::ImageIsLine);
        }
        let center = ((self.a * z0 + self.b) * w.conj() - self.a * self.c.conj() * (r * r)) / den;
        OrientedCircle::new(center, r / den.abs())
    }

    /// Like [`Moebius::apply_circle`] without the tolerance check; callers
    /// guarantee the pole stays off the circle.
    pub(crate) fn apply_circle_unchecked(&self, circle: &OrientedCircle) -> OrientedCircle {
        let z0 = circle.center();
        let r = circle.radius();
        let w = self.c * z0 + self.d;
        let den = w.norm_sqr() - self.c.norm_sqr() * r * r;
        let center = ((self.a * z0 + self.b) * w.conj() - self.a * self.c.conj() * (r * r)) / den;
        OrientedCircle::from_parts(center, r / den.abs())
    }

    /// Identity, parabolic, elliptic or loxodromic, decided by `tr²` with the
    /// band [`tol::CLASSIFICATION`] resolving to the boundary class.
    pub fn classify(&self) -> Classification {
        let band = tol::CLASSIFICATION;
        if self.b.norm() <= band && self.c.norm() <= band && (self.a - self.d).norm() <= band {
            return Classification::Identity;
        }
        let t2 = self.trace_sq();
        if (t2 - 4.0).norm() <= band {
            return Classification::Parabolic;
        }
        if t2.im.abs() <= band && t2.re >= -band && t2.re < 4.0 {
            return Classification::Elliptic;
        }
        let t = self.trace();
        let disc = (t2 - 4.0).sqrt();
        let mut k = (t + disc) * 0.5;
        if k.norm() < 1.0 {
            k = k.inv();
        }
        Classification::Loxodromic { multiplier: k * k }
    }

    /// Roots of `cz² + (d - a)z - b = 0`, projectively. Loxodromic pairs are
    /// ordered `(attracting, repelling)`.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        let class = self.classify();
        if class == Classification::Identity {
            return Err(Error::IsIdentity);
        }
        let amd = self.a - self.d;
        let s = (self.trace_sq() - 4.0).sqrt();
        if class == Classification::Parabolic {
            let p = if self.c == ZERO {
                SpherePoint::Infinity
            } else {
                SpherePoint::finite(amd / (self.c * 2.0))
            };
            return Ok(FixedPoints::Single(p));
        }
        // Pick the sign avoiding cancellation; the other root is -b/(c·z1) = -2b/q.
        let q = if (amd + s).norm() >= (amd - s).norm() {
            amd + s
        } else {
            amd - s
        };
        let z1 = if self.c == ZERO {
            SpherePoint::Infinity
        } else {
            SpherePoint::finite(q / (self.c * 2.0))
        };
        let z2 = SpherePoint::finite(self.b * -2.0 / q);
        if !class.is_loxodromic() {
            return Ok(FixedPoints::Pair(z1, z2));
        }
        // |cz + d| > 1 at the attracting point (derivative 1/(cz+d)² has modulus < 1).
        let stretch = |z: SpherePoint| z.as_finite().map(|z| (self.c * z + self.d).norm());
        let first_attracts = match (stretch(z1), stretch(z2)) {
            (Some(s1), Some(s2)) => s1 >= s2,
            (None, Some(s2)) => s2 < 1.0,
            (Some(s1), None) => s1 > 1.0,
            (None, None) => unreachable!("distinct fixed points"),
        };
        Ok(if first_attracts {
            FixedPoints::Pair(z1, z2)
        } else {
            FixedPoints::Pair(z2, z1)
        })
    }

    /// Projective comparison of normalized matrices (up to sign).
    pub fn approx_eq(&self, other: &Moebius, tol: f64) -> bool {
        let close = |s: f64| {
            let [a, b, c, d] = self.entries();
            let [e, f, g, h] = other.entries();
            (a - e * s).norm() <= tol
                && (b - f * s).norm() <= tol
                && (c - g * s).norm() <= tol
                && (d - h * s).norm() <= tol
        };
        close(1.0) || close(-1.0)
    }
}

impl Mul for Moebius {
    type Output = Moebius;

    fn mul(self, rhs: Moebius) -> Moebius {
        self.compose(&rhs)
    }
}

impl Mul<&Moebius> for &Moebius {
    type Output = Moebius;

    fn mul(self, rhs: &Moebius) -> Moebius {
        self.compose(rhs)
    }
}
