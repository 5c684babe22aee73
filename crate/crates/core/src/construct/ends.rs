use alloc::vec::Vec;

use crate::config::{CirclePair, CircleSystem, ConjugatedFamily, FamilySpec, TailFamily};
use crate::math::{acosh, sqrt};
use crate::moebius::{chordal_distance, Moebius, OrientedCircle, SpherePoint};
use crate::{Complex64, Error, Result};

/// Smallest accepted spacing margin.
pub const MIN_MARGIN: f64 = 2.0;
/// Multiplier of every interval conjugator.
pub const CONJUGATOR_MULTIPLIER: f64 = 4.0;
/// Deepest supported Cantor truncation.
pub const MAX_CANTOR_DEPTH: u32 = 16;
/// Scale of the one-sided tails at the outer ends of the set.
pub const TAIL_SCALE: f64 = 0.25;

const DISTINCT: f64 = 1e-12;

/// A closed subset of `[0, 1]` given by finitely many points, a truncated
/// middle-thirds Cantor set, or both; plus extra handles of finite genus.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EndSetSpec {
    points: Vec<f64>,
    cantor_depth: Option<u32>,
    handles: usize,
}

impl EndSetSpec {
    /// Points are sorted and merged when closer than `1e-12`.
    pub fn new(points: Vec<f64>, cantor_depth: Option<u32>) -> Result<Self> {
        let mut points = points;
        for &p in &points {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::OutOfDomain {
                    value: p,
                    domain: "end point in [0, 1]",
                });
            }
        }
        if cantor_depth.is_some_and(|d| d > MAX_CANTOR_DEPTH) {
            return Err(Error::BadParameter("Cantor depth above 16"));
        }
        points.sort_by(f64::total_cmp);
        points.dedup_by(|b, a| *b - *a <= DISTINCT);
        Ok(EndSetSpec {
            points,
            cantor_depth,
            handles: 0,
        })
    }

    /// No ends; only handles.
    pub fn empty() -> Self {
        EndSetSpec::default()
    }

    pub fn cantor(depth: u32) -> Result<Self> {
        EndSetSpec::new(Vec::new(), Some(depth))
    }

    /// Adds `n` explicit pairs of finite genus away from the end set.
    pub fn with_handles(mut self, n: usize) -> Self {
        self.handles = n;
        self
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn cantor_depth(&self) -> Option<u32> {
        self.cantor_depth
    }

    pub fn handles(&self) -> usize {
        self.handles
    }

    pub fn has_ends(&self) -> bool {
        !self.points.is_empty() || self.cantor_depth.is_some()
    }

    /// The set as sorted disjoint closed intervals (points are degenerate).
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        let mut atoms: Vec<(f64, f64)> = self.points.iter().map(|&p| (p, p)).collect();
        if let Some(depth) = self.cantor_depth {
            atoms.extend(cantor_intervals(depth));
        }
        atoms.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (lo, hi) in atoms {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + DISTINCT => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        merged
    }

    /// Bounded complementary intervals, left to right.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.atoms().windows(2).map(|w| (w[0].1, w[1].0)).collect()
    }
}

/// The `2^depth` closed intervals of the level-`depth` middle-thirds set.
fn cantor_intervals(depth: u32) -> Vec<(f64, f64)> {
    let mut level = alloc::vec![(0.0, 1.0)];
    for _ in 0..depth {
        level = level
            .into_iter()
            .flat_map(|(a, b): (f64, f64)| {
                let t = (b - a) / 3.0;
                [(a, a + t), (b - t, b)]
            })
            .collect();
    }
    level
}

/// A family realizing an end set, with its separation guarantee.
#[derive(Debug, Clone, PartialEq)]
pub struct EndSpaceRealization {
    pub family: FamilySpec,
    /// Lower bound on the hyperbolic distance between any two planes spanned
    /// by circles of any truncation.
    pub delta: f64,
    pub margin: f64,
    /// Base circle radius over the length of its interval.
    pub radius_ratio: f64,
    pub intervals: Vec<(f64, f64)>,
    /// Points carrying a one-sided tail and the tail direction (`±1`).
    pub tails: Vec<(f64, f64)>,
}

/// Lower bound on plane distances of a realization with the given margin.
///
/// The binding case is two consecutive tail pairs, whose inversive distance
/// is `(2 + margin)²/2 − 17/8`.
pub fn separation_bound(margin: f64) -> f64 {
    let m = 2.0 + margin;
    acosh(m * m / 2.0 - 17.0 / 8.0)
}

/// Builds a family whose accumulation set is the given end set.
///
/// Each bounded gap `(a, b)` gets a conjugator fixing `a` and `b` (attracting
/// `b`, multiplier `λ = 4`) and a canonically paired base pair in the middle
/// third of the gap, which is a fundamental segment of the conjugator. With
/// `F = (b − a)(√λ − 1)/(√λ + 1)` the radius is `F/(4 + 3·margin)` and the centres sit at the
/// midpoint `∓(1 + margin/2)` radii, so every gap between the two circles and
/// from a circle to the segment ends is `margin` radii.
///
/// Outermost points not bounding a gap get a one-sided tail pointing away
/// from the set. Handles are placed as disjoint pairs to the right of `x = 2`.
pub fn realize_end_space(spec: &EndSetSpec, margin: f64) -> Result<EndSpaceRealization> {
    if !(margin >= MIN_MARGIN) || !margin.is_finite() {
        return Err(Error::InfeasibleMargin("margin must be finite and at least 2"));
    }
    let atoms = spec.atoms();
    let gaps = spec.gaps();
    let root = sqrt(CONJUGATOR_MULTIPLIER);
    let radius_ratio = (root - 1.0) / (root + 1.0) / (4.0 + 3.0 * margin);
    let mut family = FamilySpec::default();

    for &(a, b) in &gaps {
        let len = b - a;
        let r = len * radius_ratio;
        let s = (1.0 + margin / 2.0) * r;
        let mid = 0.5 * (a + b);
        let c = circle(mid - s, r)?;
        let c_prime = circle(mid + s, r)?;
        let conjugator = Moebius::with_fixed_points(
            SpherePoint::from(b),
            SpherePoint::from(a),
            Complex64::new(CONJUGATOR_MULTIPLIER, 0.0),
        )?;
        family.families.push(ConjugatedFamily {
            base: CirclePair::canonical(family.families.len(), c, c_prime, 0.0)?,
            conjugator,
        });
    }

    let mut tails = Vec::new();
    if let (Some(first), Some(last)) = (atoms.first(), atoms.last()) {
        if atoms.len() == 1 && first.0 == first.1 {
            tails.push((first.0, 1.0));
        } else {
            if atoms.len() == 1 || first.0 < first.1 {
                tails.push((first.0, -1.0));
            }
            if atoms.len() == 1 || last.0 < last.1 {
                tails.push((last.1, 1.0));
            }
        }
    }
    for &(p, dir) in &tails {
        family.tails.push(TailFamily::new(
            Complex64::new(p, 0.0),
            Complex64::new(dir, 0.0),
            TAIL_SCALE,
            margin,
        )?);
    }

    let handle_radius = 2.0 / (2.0 + margin);
    for j in 0..spec.handles() {
        let x = 3.0 + 4.0 * j as f64;
        family.explicit.push(CirclePair::canonical(
            j,
            circle(x, handle_radius)?,
            circle(x + 2.0, handle_radius)?,
            0.0,
        )?);
    }

    Ok(EndSpaceRealization {
        family,
        delta: separation_bound(margin),
        margin,
        radius_ratio,
        intervals: gaps,
        tails,
    })
}

fn circle(x: f64, r: f64) -> Result<OrientedCircle> {
    OrientedCircle::new(Complex64::new(x, 0.0), r)
}

/// Largest chordal distance from a point of `targets` to the nearest circle
/// centre of `sys`; zero when there are no targets.
pub fn center_approach(sys: &CircleSystem, targets: &[SpherePoint]) -> f64 {
    targets
        .iter()
        .map(|&p| {
            sys.circles()
                .map(|(_, c)| chordal_distance(SpherePoint::finite(c.center()), p))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{handlebody_summary_family, validate, Genus};
    use crate::orbit::min_plane_distance;

    #[test]
    fn two_point_set() {
        let spec = EndSetSpec::new(alloc::vec![0.0, 1.0], None).unwrap();
        let real = realize_end_space(&spec, 3.0).unwrap();
        assert_eq!(real.family.families.len(), 1);
        assert!(real.family.tails.is_empty());
        let sys = real.family.materialize(2).unwrap();
        assert_eq!(sys.rank(), 5);
        assert!(validate(&sys).admissible);
        let acc = real.family.accumulation_points();
        assert_eq!(acc.len(), 2);
        assert!(chordal_distance(acc[0], SpherePoint::from(0.0)) < 1e-12);
        assert!(chordal_distance(acc[1], SpherePoint::from(1.0)) < 1e-12);
        assert!(min_plane_distance(&sys).unwrap() >= real.delta - 1e-12);
        let report = validate(&real.family.materialize(5).unwrap());
        assert!(report.admissible, "{:?}", report.violations);
        assert!(real.family.check_star(5).passed);
    }

    #[test]
    fn approach_shrinks_with_truncation() {
        let spec = EndSetSpec::new(alloc::vec![0.0, 1.0], None).unwrap();
        let real = realize_end_space(&spec, 3.0).unwrap();
        let acc = real.family.accumulation_points();
        let mut prev = f64::INFINITY;
        for n in 1..=5 {
            let d = center_approach(&real.family.materialize(n).unwrap(), &acc);
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 0.05);
    }

    #[test]
    fn cantor_depth_two() {
        let spec = EndSetSpec::cantor(2).unwrap();
        let real = realize_end_space(&spec, 3.0).unwrap();
        assert_eq!(real.family.families.len(), 3);
        let gaps = &real.intervals;
        let expect = [(1.0 / 9.0, 2.0 / 9.0), (1.0 / 3.0, 2.0 / 3.0), (7.0 / 9.0, 8.0 / 9.0)];
        for (g, e) in gaps.iter().zip(expect) {
            assert!((g.0 - e.0).abs() < 1e-15 && (g.1 - e.1).abs() < 1e-15);
        }
        assert_eq!(real.family.accumulation_points().len(), 8);
        for n in 1..=3 {
            let sys = real.family.materialize(n).unwrap();
            let report = validate(&sys);
            assert!(report.admissible, "{:?}", report.violations);
            assert!(report.min_plane_distance >= real.delta - 1e-12);
        }
        assert!(real.family.check_star(4).passed);
    }

    #[test]
    fn handles_only() {
        let spec = EndSetSpec::empty().with_handles(3);
        let real = realize_end_space(&spec, 2.0).unwrap();
        assert!(real.family.is_finite());
        let sys = real.family.materialize(1).unwrap();
        assert_eq!(sys.rank(), 3);
        assert!(validate(&sys).admissible);
        let summary = handlebody_summary_family(&real.family, 1).unwrap();
        assert_eq!(summary.genus, Genus::Finite(3));
        assert!(summary.accumulation.is_empty());
    }

    #[test]
    fn singleton_gets_a_tail() {
        let spec = EndSetSpec::new(alloc::vec![0.5], None).unwrap().with_handles(1);
        let real = realize_end_space(&spec, 2.0).unwrap();
        assert_eq!(real.tails, alloc::vec![(0.5, 1.0)]);
        let sys = real.family.materialize(4).unwrap();
        let report = validate(&sys);
        assert!(report.admissible);
        assert!(report.min_plane_distance >= real.delta - 1e-12);
        assert_eq!(real.family.accumulation_points(), alloc::vec![SpherePoint::from(0.5)]);
    }

    #[test]
    fn mixed_points_and_cantor() {
        let spec = EndSetSpec::new(alloc::vec![0.5, 0.0, 0.5], Some(1)).unwrap();
        assert_eq!(spec.points(), &[0.0, 0.5]);
        assert_eq!(spec.atoms().len(), 3);
        let real = realize_end_space(&spec, 4.0).unwrap();
        let sys = real.family.materialize(3).unwrap();
        let report = validate(&sys);
        assert!(report.admissible);
        assert!(report.min_plane_distance >= real.delta - 1e-12);
    }

    #[test]
    fn margin_is_checked() {
        let spec = EndSetSpec::new(alloc::vec![0.0, 1.0], None).unwrap();
        assert!(matches!(
            realize_end_space(&spec, 1.5),
            Err(Error::InfeasibleMargin(_))
        ));
        assert!(EndSetSpec::new(alloc::vec![1.5], None).is_err());
    }

    #[test]
    fn separation_is_monotone() {
        let mut prev = 0.0;
        for k in 0..20 {
            let d = separation_bound(2.0 + 0.5 * k as f64);
            assert!(d > prev);
            prev = d;
        }
    }
}
