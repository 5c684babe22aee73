//! Admissible circle configurations.
//!
//! A [`CircleSystem`] is a finite list of [`CirclePair`]s. Infinite
//! configurations are described by a [`FamilySpec`] and materialized to a
//! system at a chosen truncation radius.

mod family;
mod summary;

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::TAU;
use crate::moebius::{pair_circles, Moebius, OrientedCircle, SpherePoint};
use crate::tol;
use crate::{Error, Result};

pub use family::{
    check_star_tail, ConjugatedFamily, FamilySpec, StarReport, TailCheck, TailFamily, TailSource,
};
pub use summary::{handlebody_summary, handlebody_summary_family, Genus, HandlebodySummary};

/// Which circle of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    C,
    CPrime,
}

/// A configuration circle, addressed by pair index and side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleId {
    pub pair: usize,
    pub side: Side,
}

impl CircleId {
    /// Position in [`CircleSystem::circles`] order.
    pub fn flat_index(&self) -> usize {
        2 * self.pair + usize::from(self.side == Side::CPrime)
    }
}

/// Two circles and the map with `map(Ext c) = Int c_prime`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePair {
    pub c: OrientedCircle,
    pub c_prime: OrientedCircle,
    pub map: Moebius,
    pub label: usize,
}

impl CirclePair {
    pub fn new(label: usize, c: OrientedCircle, c_prime: OrientedCircle, map: Moebius) -> Self {
        CirclePair {
            c,
            c_prime,
            map,
            label,
        }
    }

    /// Pair with the canonical map from [`pair_circles`].
    pub fn canonical(
        label: usize,
        c: OrientedCircle,
        c_prime: OrientedCircle,
        twist: f64,
    ) -> Result<Self> {
        Ok(Self::new(label, c, c_prime, pair_circles(&c, &c_prime, twist)?))
    }

    pub fn circle(&self, side: Side) -> &OrientedCircle {
        match side {
            Side::C => &self.c,
            Side::CPrime => &self.c_prime,
        }
    }

    /// How badly `map` fails the pairing contract: the larger of the
    /// relative mismatch between `map(c)` and `c_prime` and the worst sampled
    /// side violation. Zero (up to rounding) for a correct pair.
    pub fn pairing_defect(&self) -> f64 {
        let target = &self.c_prime;
        let image = match self.map.apply_circle(&self.c) {
            Ok(img) => img,
            Err(_) => return f64::INFINITY,
        };
        let shape = ((image.center() - target.center()).norm()
            + (image.radius() - target.radius()).abs())
            / target.radius();

        let (z0, r) = (self.c.center(), self.c.radius());
        let mut worst: f64 = 0.0;
        // Exterior samples (including ∞) must land inside c_prime.
        let outside = core::iter::once(SpherePoint::Infinity).chain((0..16).flat_map(|k| {
            let theta = TAU * (k as f64 + 0.5) / 16.0;
            let dir = Complex64::from_polar(1.0, theta);
            [1.5, 3.0].map(move |s| SpherePoint::finite(z0 + dir * (s * r)))
        }));
        for z in outside {
            worst = worst.max(side_violation(&self.map, z, target, true));
        }
        let inside = core::iter::once(SpherePoint::finite(z0)).chain((0..16).map(|k| {
            let theta = TAU * (k as f64 + 0.5) / 16.0;
            SpherePoint::finite(z0 + Complex64::from_polar(0.5 * r, theta))
        }));
        for z in inside {
            worst = worst.max(side_violation(&self.map, z, target, false));
        }
        shape.max(worst)
    }

    /// The pair transported by `m`: circles mapped, pairing map conjugated.
    pub fn transformed(&self, m: &Moebius) -> Result<CirclePair> {
        Ok(CirclePair {
            c: m.apply_circle(&self.c)?,
            c_prime: m.apply_circle(&self.c_prime)?,
            map: self.map.conjugate_by(m),
            label: self.label,
        })
    }
}

/// Relative amount by which `map(z)` lies on the wrong side of `target`.
fn side_violation(map: &Moebius, z: SpherePoint, target: &OrientedCircle, want_inside: bool) -> f64 {
    let w = match map.apply(z) {
        SpherePoint::Finite(w) => w,
        SpherePoint::Infinity => return if want_inside { f64::INFINITY } else { 0.0 },
    };
    let s = target.signed_distance(w) / target.radius();
    if want_inside {
        (s + tol::GEOMETRIC).max(0.0)
    } else {
        (tol::GEOMETRIC - s).max(0.0)
    }
}

/// Where a truncated system came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    pub family: FamilySpec,
    pub radius: u32,
}

/// A finite, ordered list of circle pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircleSystem {
    pairs: Vec<CirclePair>,
    provenance: Option<Box<Truncation>>,
}

impl CircleSystem {
    pub fn new(pairs: Vec<CirclePair>) -> Self {
        CircleSystem {
            pairs,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, family: FamilySpec, radius: u32) -> Self {
        self.provenance = Some(Box::new(Truncation { family, radius }));
        self
    }

    pub fn pairs(&self) -> &[CirclePair] {
        &self.pairs
    }

    pub fn provenance(&self) -> Option<&Truncation> {
        self.provenance.as_deref()
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn circle(&self, id: CircleId) -> &OrientedCircle {
        self.pairs[id.pair].circle(id.side)
    }

    /// All `2n` circles, ordered `C₀, C₀′, C₁, C₁′, …`.
    pub fn circles(&self) -> impl Iterator<Item = (CircleId, &OrientedCircle)> + '_ {
        self.pairs.iter().enumerate().flat_map(|(pair, p)| {
            [
                (
                    CircleId {
                        pair,
                        side: Side::C,
                    },
                    &p.c,
                ),
                (
                    CircleId {
                        pair,
                        side: Side::CPrime,
                    },
                    &p.c_prime,
                ),
            ]
        })
    }

    /// Applies `m` to every circle and conjugates every map. Fails when `m`
    /// would turn some disc inside out (its pole lies in a closed disc).
    pub fn transformed(&self, m: &Moebius) -> Result<CircleSystem> {
        let pole = m.pole();
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                for c in [&p.c, &p.c_prime] {
                    if let SpherePoint::Finite(z) = pole {
                        if c.signed_distance(z) <= tol::GEOMETRIC * c.radius() {
                            return Err(Error::BadParameter(
                                "transformation moves infinity into a configuration disc",
                            ));
                        }
                    }
                }
                p.transformed(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CircleSystem {
            pairs,
            provenance: None,
        })
    }
}

/// Kind of admissibility failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// Closed discs meet; `gap` is the (non-positive) Euclidean gap.
    Overlap {
        first: CircleId,
        second: CircleId,
        gap: f64,
    },
    /// One disc contains the other; `gap` is `d + r_inner - r_outer`.
    Nested {
        outer: CircleId,
        inner: CircleId,
        gap: f64,
    },
    /// `map(Ext c) ≠ Int c_prime`; `defect` from [`CirclePair::pairing_defect`].
    PairingMismatch { pair: usize, defect: f64 },
    /// The pairing map is not loxodromic.
    NotLoxodromic { pair: usize, trace_sq: Complex64 },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Overlap { .. } => "overlap",
            Violation::Nested { .. } => "nested",
            Violation::PairingMismatch { .. } => "pairing_mismatch",
            Violation::NotLoxodromic { .. } => "not_loxodromic",
        }
    }

    pub fn measured(&self) -> f64 {
        match *self {
            Violation::Overlap { gap, .. } | Violation::Nested { gap, .. } => gap,
            Violation::PairingMismatch { defect, .. } => defect,
            Violation::NotLoxodromic { trace_sq, .. } => trace_sq.re,
        }
    }

    /// Flat circle indices (for disc violations) or pair indices.
    pub fn indices(&self) -> [usize; 2] {
        match *self {
            Violation::Overlap { first, second, .. } => [first.flat_index(), second.flat_index()],
            Violation::Nested { outer, inner, .. } => [outer.flat_index(), inner.flat_index()],
            Violation::PairingMismatch { pair, .. } | Violation::NotLoxodromic { pair, .. } => {
                [pair, pair]
            }
        }
    }
}

/// Result of [`validate`]. `admissible` holds exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub admissible: bool,
    pub violations: Vec<Violation>,
    /// Smallest Euclidean gap between two configuration discs.
    pub min_pair_gap: f64,
    /// Smallest hyperbolic distance between spanning planes (0 if some discs meet).
    pub min_plane_distance: f64,
    pub purely_loxodromic: bool,
    /// Set for truncations of infinite families: admissibility of the infinite
    /// configuration is only checked on the finite part.
    pub truncation_limited: bool,
}

/// Pairing defects above this relative size are violations.
const PAIRING_TOLERANCE: f64 = 1e-7;

/// Checks disjointness, containment-freeness, the pairing contract and
/// loxodromy. Never fails; problems are reported.
pub fn validate(sys: &CircleSystem) -> ValidationReport {
    let mut violations = Vec::new();
    let circles: Vec<(CircleId, &OrientedCircle)> = sys.circles().collect();
    let mut min_gap = f64::INFINITY;
    let mut min_plane = f64::INFINITY;

    for (i, &(id_a, a)) in circles.iter().enumerate() {
        for &(id_b, b) in &circles[i + 1..] {
            let gap = a.gap(b);
            min_gap = min_gap.min(gap);
            if a.strictly_contains(b) || b.strictly_contains(a) || is_internally_tangent(a, b) {
                let (outer, inner, o, n) = if a.radius() >= b.radius() {
                    (id_a, id_b, a, b)
                } else {
                    (id_b, id_a, b, a)
                };
                let d = (o.center() - n.center()).norm();
                violations.push(Violation::Nested {
                    outer,
                    inner,
                    gap: d + n.radius() - o.radius(),
                });
                min_plane = 0.0;
            } else if gap <= tol::GEOMETRIC * a.radius().min(b.radius()) {
                violations.push(Violation::Overlap {
                    first: id_a,
                    second: id_b,
                    gap,
                });
                min_plane = 0.0;
            } else {
                match a.plane_distance(b) {
                    Ok(pd) => min_plane = min_plane.min(pd.hyperbolic),
                    Err(_) => {
                        violations.push(Violation::Overlap {
                            first: id_a,
                            second: id_b,
                            gap,
                        });
                        min_plane = 0.0;
                    }
                }
            }
        }
    }

    let mut purely_loxodromic = true;
    for (index, pair) in sys.pairs().iter().enumerate() {
        let defect = pair.pairing_defect();
        if !(defect <= PAIRING_TOLERANCE) {
            violations.push(Violation::PairingMismatch {
                pair: index,
                defect,
            });
        }
        if !pair.map.classify().is_loxodromic() {
            purely_loxodromic = false;
            violations.push(Violation::NotLoxodromic {
                pair: index,
                trace_sq: pair.map.trace_sq(),
            });
        }
    }

    ValidationReport {
        admissible: violations.is_empty(),
        violations,
        min_pair_gap: min_gap,
        min_plane_distance: min_plane,
        purely_loxodromic,
        truncation_limited: sys.provenance().is_some(),
    }
}

fn is_internally_tangent(a: &OrientedCircle, b: &OrientedCircle) -> bool {
    let d = (a.center() - b.center()).norm();
    let s = (a.radius() - b.radius()).abs();
    d <= s + tol::GEOMETRIC * a.radius().min(b.radius())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(x: f64, y: f64, r: f64) -> OrientedCircle {
        OrientedCircle::new(Complex64::new(x, y), r).unwrap()
    }

    fn two_pairs() -> CircleSystem {
        CircleSystem::new(alloc::vec![
            CirclePair::canonical(0, circle(-2.0, 0.0, 1.0), circle(2.0, 0.0, 1.0), 0.0).unwrap(),
            CirclePair::canonical(1, circle(0.0, -5.0, 1.0), circle(0.0, 5.0, 1.0), 0.3).unwrap(),
        ])
    }

    #[test]
    fn far_apart_pairs_are_admissible() {
        let report = validate(&two_pairs());
        assert!(report.admissible, "{:?}", report.violations);
        assert!(report.purely_loxodromic);
        assert!(report.min_pair_gap > 1.0);
        assert!((report.min_plane_distance - libm::acosh(7.0)).abs() < 1e-12);
    }

    #[test]
    fn overlap_is_reported_with_negative_gap() {
        let a = circle(0.0, 0.0, 1.0);
        let b = circle(5.0, 0.0, 1.0);
        let pair = CirclePair::canonical(0, a, b, 0.0).unwrap();
        let intruder = CirclePair::canonical(1, circle(1.5, 0.0, 1.0), circle(9.0, 0.0, 1.0), 0.0)
            .unwrap();
        let report = validate(&CircleSystem::new(alloc::vec![pair, intruder]));
        assert!(!report.admissible);
        let overlap = report
            .violations
            .iter()
            .find(|v| v.kind() == "overlap")
            .expect("overlap reported");
        assert!(overlap.measured() < 0.0);
        assert_eq!(overlap.indices(), [0, 2]);
        assert_eq!(report.min_plane_distance, 0.0);
    }

    #[test]
    fn nested_discs_are_reported() {
        let pair = CirclePair::canonical(0, circle(0.0, 0.0, 1.0), circle(10.0, 0.0, 3.0), 0.0)
            .unwrap();
        let inner = CirclePair::canonical(1, circle(10.5, 0.0, 0.5), circle(-5.0, 0.0, 1.0), 0.0)
            .unwrap();
        let report = validate(&CircleSystem::new(alloc::vec![pair, inner]));
        assert!(report.violations.iter().any(|v| v.kind() == "nested"));
    }

    #[test]
    fn parabolic_map_is_not_loxodromic() {
        let mut sys = two_pairs();
        sys.pairs[0].map = Moebius::translation(Complex64::new(1.0, 0.0));
        let report = validate(&sys);
        assert!(!report.purely_loxodromic);
        assert!(!report.admissible);
        assert!(report.violations.iter().any(|v| v.kind() == "not_loxodromic"));
        assert!(report.violations.iter().any(|v| v.kind() == "pairing_mismatch"));
    }

    #[test]
    fn inverse_orientation_is_a_mismatch() {
        let mut sys = two_pairs();
        // z ↦ z0 + r²/(z - z0) preserves C and swaps its sides, so g∘σ maps C
        // onto C' but sends Ext C to Ext C'.
        let (z0, r) = (sys.pairs[0].c.center(), sys.pairs[0].c.radius());
        let one = Complex64::new(1.0, 0.0);
        let swap = Moebius::new(z0, Complex64::from(r * r) - z0 * z0, one, -z0).unwrap();
        sys.pairs[0].map = sys.pairs[0].map.compose(&swap);
        assert!(sys.pairs[0].pairing_defect() > PAIRING_TOLERANCE);
        let report = validate(&sys);
        assert!(!report.admissible);
        assert!(report.violations.iter().any(|v| v.kind() == "pairing_mismatch"));
    }

    #[test]
    fn empty_system_is_admissible() {
        let report = validate(&CircleSystem::default());
        assert!(report.admissible);
        assert_eq!(report.min_plane_distance, f64::INFINITY);
    }
}
