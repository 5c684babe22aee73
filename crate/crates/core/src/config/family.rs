use alloc::vec::Vec;

use num_complex::Complex64;

use super::{CirclePair, CircleSystem};
use crate::math::TAU;
use crate::moebius::{chordal_distance, Classification, FixedPoints, Moebius, OrientedCircle, SpherePoint};
use crate::tol;
use crate::{Error, Result};

/// The conjugates `hⁿ g h⁻ⁿ` of one base pair, with circles `hⁿ(C)`, `hⁿ(C′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatedFamily {
    pub base: CirclePair,
    pub conjugator: Moebius,
}

impl ConjugatedFamily {
    /// The `n`-th member, relabelled.
    pub fn member(&self, n: i64, label: usize) -> Result<CirclePair> {
        let h = conjugator_power(&self.conjugator, n);
        let mut pair = self.base.transformed(&h)?;
        pair.label = label;
        Ok(pair)
    }
}

/// `hⁿ`, rebuilt from the fixed points when `h` is loxodromic; this is far
/// more accurate than repeated squaring for large multipliers.
fn conjugator_power(h: &Moebius, n: i64) -> Moebius {
    if let (Classification::Loxodromic { multiplier }, Ok(FixedPoints::Pair(a, r))) =
        (h.classify(), h.fixed_points())
    {
        if let Ok(m) = Moebius::with_fixed_points(a, r, multiplier.powi(n as i32)) {
            return m;
        }
    }
    h.power(n)
}

/// A geometric sequence of pairs shrinking onto `limit` from one side.
///
/// With `s = scale · 4⁻ⁿ` (`n ≥ 0`), pair `n` has circles of radius
/// `s / (2 + margin)` centered at `limit + s·direction` and
/// `limit + 2s·direction`, paired canonically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFamily {
    pub limit: Complex64,
    /// Unit vector pointing away from `limit` into the tail.
    pub direction: Complex64,
    pub scale: f64,
    pub margin: f64,
}

impl TailFamily {
    pub fn new(limit: Complex64, direction: Complex64, scale: f64, margin: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::BadParameter("tail scale must be positive"));
        }
        if !(margin > 0.0) || !margin.is_finite() {
            return Err(Error::BadParameter("tail margin must be positive"));
        }
        let norm = direction.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::BadParameter("tail direction must be non-zero"));
        }
        Ok(TailFamily {
            limit,
            direction: direction / norm,
            scale,
            margin,
        })
    }

    pub fn member(&self, n: u32, label: usize) -> Result<CirclePair> {
        let s = self.scale * libm::pow(0.25, f64::from(n));
        let radius = s / (2.0 + self.margin);
        let c = OrientedCircle::new(self.limit + self.direction * s, radius)?;
        let c_prime = OrientedCircle::new(self.limit + self.direction * (2.0 * s), radius)?;
        CirclePair::canonical(label, c, c_prime, 0.0)
    }
}

/// An infinite configuration: explicit pairs, conjugated families and
/// one-sided tails.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FamilySpec {
    pub explicit: Vec<CirclePair>,
    pub families: Vec<ConjugatedFamily>,
    pub tails: Vec<TailFamily>,
}

impl FamilySpec {
    /// True when there is nothing infinite to truncate.
    pub fn is_finite(&self) -> bool {
        self.families.is_empty() && self.tails.is_empty()
    }

    /// Finite truncation: explicit pairs, then each family for
    /// `n ∈ [-radius, radius]`, then each tail for `n ∈ [0, radius]`.
    pub fn materialize(&self, radius: u32) -> Result<CircleSystem> {
        let mut pairs = Vec::new();
        for p in &self.explicit {
            let mut p = *p;
            p.label = pairs.len();
            pairs.push(p);
        }
        let r = i64::from(radius);
        for fam in &self.families {
            for n in -r..=r {
                pairs.push(fam.member(n, pairs.len())?);
            }
        }
        for tail in &self.tails {
            for n in 0..=radius {
                pairs.push(tail.member(n, pairs.len())?);
            }
        }
        Ok(CircleSystem::new(pairs).with_provenance(self.clone(), radius))
    }

    /// The accumulation set of the infinite configuration: both fixed points
    /// of each conjugator plus each tail's limit, deduplicated (chordal
    /// tolerance [`tol::DEDUP`]) and sorted by real part, imaginary part, `∞` last.
    pub fn accumulation_points(&self) -> Vec<SpherePoint> {
        let mut points = Vec::new();
        for fam in &self.families {
            match fam.conjugator.fixed_points() {
                Ok(FixedPoints::Pair(a, b)) => {
                    points.push(a);
                    points.push(b);
                }
                Ok(FixedPoints::Single(p)) => points.push(p),
                Err(_) => {}
            }
        }
        points.extend(self.tails.iter().map(|t| SpherePoint::finite(t.limit)));
        sort_points(&mut points);
        dedup_points(points)
    }

    /// Condition (∗) along every declared tail: for each family, the forward
    /// members `n = 1..=depth` must shrink onto the attracting fixed point of
    /// the conjugator and the backward members onto the repelling one, with
    /// `C` and `C′` converging together. Tails are checked for `n = 0..=depth`.
    pub fn check_star(&self, depth: u32) -> StarReport {
        let mut checks = Vec::new();
        let depth = i64::from(depth.max(1));
        for (index, fam) in self.families.iter().enumerate() {
            let (attracting, repelling) = match fam.conjugator.fixed_points() {
                Ok(FixedPoints::Pair(a, r)) => (a, r),
                Ok(FixedPoints::Single(p)) => (p, p),
                Err(_) => {
                    checks.push(TailCheck {
                        source: TailSource::Family {
                            index,
                            forward: true,
                        },
                        limit: SpherePoint::Infinity,
                        passed: false,
                        witness: Some(0),
                        final_distance: f64::INFINITY,
                    });
                    continue;
                }
            };
            for (forward, limit) in [(true, attracting), (false, repelling)] {
                let ns: Vec<i64> = if forward {
                    (1..=depth).collect()
                } else {
                    (1..=depth).map(|n| -n).collect()
                };
                let pairs: Result<Vec<_>> = ns
                    .iter()
                    .map(|&n| fam.member(n, 0).map(|p| (p.c, p.c_prime)))
                    .collect();
                let check = match pairs {
                    Ok(pairs) => {
                        let (passed, witness, final_distance) = check_star_tail(&pairs, limit);
                        TailCheck {
                            source: TailSource::Family { index, forward },
                            limit,
                            passed,
                            witness: witness.map(|k| ns[k]),
                            final_distance,
                        }
                    }
                    Err(_) => TailCheck {
                        source: TailSource::Family { index, forward },
                        limit,
                        passed: false,
                        witness: Some(ns[0]),
                        final_distance: f64::INFINITY,
                    },
                };
                checks.push(check);
            }
        }
        for (index, tail) in self.tails.iter().enumerate() {
            let limit = SpherePoint::finite(tail.limit);
            let pairs: Result<Vec<_>> = (0..=depth as u32)
                .map(|n| tail.member(n, 0).map(|p| (p.c, p.c_prime)))
                .collect();
            let (passed, witness, final_distance) = match pairs {
                Ok(pairs) => check_star_tail(&pairs, limit),
                Err(_) => (false, Some(0), f64::INFINITY),
            };
            checks.push(TailCheck {
                source: TailSource::Tail { index },
                limit,
                passed,
                witness: witness.map(|k| k as i64),
                final_distance,
            });
        }
        StarReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Which declared tail a [`TailCheck`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSource {
    Family { index: usize, forward: bool },
    Tail { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub source: TailSource,
    pub limit: SpherePoint,
    pub passed: bool,
    /// Member index at which monotone convergence first fails.
    pub witness: Option<i64>,
    /// Largest chordal distance from the limit to the last pair checked.
    pub final_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarReport {
    pub passed: bool,
    pub checks: Vec<TailCheck>,
}

const REACH_SAMPLES: usize = 64;

/// Checks that a sequence of pairs converges onto `limit` with both circles
/// of each pair converging together: the chordal reach of `C_k` and `C′_k`
/// from `limit` and the chordal Hausdorff distance between `C_k` and `C′_k`
/// must all be non-increasing, and must end strictly below where they began.
///
/// Returns `(passed, first failing position, final reach)`.
pub fn check_star_tail(
    pairs: &[(OrientedCircle, OrientedCircle)],
    limit: SpherePoint,
) -> (bool, Option<usize>, f64) {
    let measures: Vec<[f64; 3]> = pairs
        .iter()
        .map(|(c, cp)| {
            [
                c.chordal_reach(limit, REACH_SAMPLES),
                cp.chordal_reach(limit, REACH_SAMPLES),
                chordal_hausdorff(c, cp, REACH_SAMPLES),
            ]
        })
        .collect();
    let final_distance = measures.last().map_or(0.0, |m| m[0].max(m[1]));
    for k in 1..measures.len() {
        let (prev, cur) = (measures[k - 1], measures[k]);
        if (0..3).any(|i| cur[i] > prev[i] * (1.0 + 1e-9) + 1e-12) {
            return (false, Some(k), final_distance);
        }
    }
    if measures.len() >= 2 {
        let (first, last) = (measures[0], measures[measures.len() - 1]);
        if (0..2).any(|i| !(last[i] < first[i])) {
            return (false, Some(measures.len() - 1), final_distance);
        }
    }
    (true, None, final_distance)
}

/// Sampled chordal Hausdorff distance between two circles.
pub(crate) fn chordal_hausdorff(a: &OrientedCircle, b: &OrientedCircle, samples: usize) -> f64 {
    let pts = |c: &OrientedCircle| -> Vec<SpherePoint> {
        (0..samples)
            .map(|k| SpherePoint::finite(c.point_at(TAU * k as f64 / samples as f64)))
            .collect()
    };
    let (pa, pb) = (pts(a), pts(b));
    let directed = |from: &[SpherePoint], to: &[SpherePoint]| {
        from.iter()
            .map(|&p| {
                to.iter()
                    .map(|&q| chordal_distance(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(&pa, &pb).max(directed(&pb, &pa))
}

pub(crate) fn sort_points(points: &mut [SpherePoint]) {
    points.sort_by(|a, b| match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => core::cmp::Ordering::Equal,
        (SpherePoint::Infinity, _) => core::cmp::Ordering::Greater,
        (_, SpherePoint::Infinity) => core::cmp::Ordering::Less,
        (SpherePoint::Finite(x), SpherePoint::Finite(y)) => {
            x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
        }
    });
}

/// Drops points within [`tol::DEDUP`] of an earlier kept point.
pub(crate) fn dedup_points(points: Vec<SpherePoint>) -> Vec<SpherePoint> {
    let mut kept: Vec<SpherePoint> = Vec::with_capacity(points.len());
    for p in points {
        if kept.iter().all(|q| chordal_distance(p, *q) > tol::DEDUP) {
            kept.push(p);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate;

    fn circle(x: f64, r: f64) -> OrientedCircle {
        OrientedCircle::new(Complex64::new(x, 0.0), r).unwrap()
    }

    /// Hyperbolic map fixing 0 (repelling) and 1 (attracting).
    fn unit_interval_family() -> ConjugatedFamily {
        let h = Moebius::with_fixed_points(1.0.into(), 0.0.into(), Complex64::new(9.0, 0.0))
            .unwrap();
        let base = CirclePair::canonical(0, circle(0.45, 0.02), circle(0.55, 0.02), 0.0).unwrap();
        ConjugatedFamily {
            base,
            conjugator: h,
        }
    }

    #[test]
    fn single_family_accumulates_on_fixed_points() {
        let fam = FamilySpec {
            families: alloc::vec![unit_interval_family()],
            ..Default::default()
        };
        let acc = fam.accumulation_points();
        assert_eq!(acc.len(), 2);
        assert!(chordal_distance(acc[0], 0.0.into()) < 1e-12);
        assert!(chordal_distance(acc[1], 1.0.into()) < 1e-12);
    }

    #[test]
    fn explicit_only_has_no_accumulation() {
        let fam = FamilySpec {
            explicit: alloc::vec![unit_interval_family().base],
            ..Default::default()
        };
        assert!(fam.accumulation_points().is_empty());
        assert!(fam.is_finite());
    }

    #[test]
    fn materialize_orders_and_labels() {
        let fam = FamilySpec {
            explicit: alloc::vec![CirclePair::canonical(7, circle(5.0, 0.5), circle(8.0, 0.5), 0.0)
                .unwrap()],
            families: alloc::vec![unit_interval_family()],
            tails: alloc::vec![TailFamily::new(
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 0.0),
                0.5,
                2.0
            )
            .unwrap()],
        };
        let sys = fam.materialize(2).unwrap();
        assert_eq!(sys.rank(), 1 + 5 + 3);
        for (i, p) in sys.pairs().iter().enumerate() {
            assert_eq!(p.label, i);
        }
        let report = validate(&sys);
        assert!(report.admissible, "{:?}", report.violations);
        assert!(report.truncation_limited);
        assert_eq!(sys.provenance().unwrap().radius, 2);
    }

    #[test]
    fn accumulation_is_independent_of_truncation() {
        let fam = FamilySpec {
            families: alloc::vec![unit_interval_family()],
            ..Default::default()
        };
        let before = fam.accumulation_points();
        for radius in 1..4 {
            let sys = fam.materialize(radius).unwrap();
            assert_eq!(sys.provenance().unwrap().family.accumulation_points(), before);
        }
    }

    #[test]
    fn conjugated_family_satisfies_star() {
        let fam = FamilySpec {
            families: alloc::vec![unit_interval_family()],
            ..Default::default()
        };
        let report = fam.check_star(6);
        assert!(report.passed, "{:?}", report.checks);
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn drifting_pairs_fail_star() {
        let fam = unit_interval_family();
        let h = fam.conjugator;
        let pairs: Vec<_> = (1..=5)
            .map(|n| {
                (
                    h.power(n).apply_circle(&fam.base.c).unwrap(),
                    h.power(-n).apply_circle(&fam.base.c_prime).unwrap(),
                )
            })
            .collect();
        let (passed, witness, _) = check_star_tail(&pairs, 1.0.into());
        assert!(!passed);
        assert_eq!(witness, Some(1));
    }

    #[test]
    fn empty_spec_passes_vacuously() {
        let report = FamilySpec::default().check_star(3);
        assert!(report.passed);
        assert!(report.checks.is_empty());
    }

    #[test]
    fn tails_shrink_onto_their_limit() {
        let tail = TailFamily::new(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0), 1.0, 3.0)
            .unwrap();
        let fam = FamilySpec {
            tails: alloc::vec![tail],
            ..Default::default()
        };
        let report = fam.check_star(8);
        assert!(report.passed);
        assert!(report.checks[0].final_distance < 1e-4);
        assert_eq!(fam.accumulation_points(), alloc::vec![SpherePoint::new(0.0, 0.0)]);
    }
}
