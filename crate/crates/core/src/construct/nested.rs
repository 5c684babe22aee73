use alloc::vec::Vec;

use crate::config::{CircleId, CirclePair, CircleSystem, Side};
use crate::math::{cosh_minus_one, exp, pow, sqrt};
use crate::moebius::{pair_circles, Moebius, OrientedCircle, SpherePoint};
use crate::orbit::{Letter, NestedChain, TranslatedCircle, Word};
use crate::{Complex64, Error, Result};

/// Orthogeodesic lengths `ℓᵢ`, `i ≥ 1`, with a closed-form tail.
#[derive(Debug, Clone, PartialEq)]
pub enum LengthRule {
    /// `ℓᵢ = scale · ratioⁱ` with `0 < ratio < 1`.
    Geometric { scale: f64, ratio: f64 },
    /// `ℓᵢ = scale · i^(−exponent)` with `exponent > 1`.
    Power { scale: f64, exponent: f64 },
    /// Listed lengths followed by lengths summing to at most `tail`.
    Explicit { lengths: Vec<f64>, tail: f64 },
}

impl LengthRule {
    pub fn length(&self, i: usize) -> Option<f64> {
        match self {
            LengthRule::Geometric { scale, ratio } => Some(scale * pow(*ratio, i as f64)),
            LengthRule::Power { scale, exponent } => Some(scale * pow(i as f64, -exponent)),
            LengthRule::Explicit { lengths, .. } => lengths.get(i.wrapping_sub(1)).copied(),
        }
    }

    /// Upper bound on `Σ_{i ≥ n} ℓᵢ`.
    pub fn tail_bound(&self, n: usize) -> Result<f64> {
        let n = n.max(1);
        match self {
            LengthRule::Geometric { scale, ratio } => {
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::BadParameter("geometric ratio must lie in (0, 1)"));
                }
                Ok(scale * pow(*ratio, n as f64) / (1.0 - ratio))
            }
            LengthRule::Power { scale, exponent } => {
                if !(*exponent > 1.0) {
                    return Err(Error::BadParameter("power exponent must exceed 1"));
                }
                let x = n as f64;
                Ok(scale * (pow(x, -exponent) + pow(x, 1.0 - exponent) / (exponent - 1.0)))
            }
            LengthRule::Explicit { lengths, tail } => {
                if !(*tail >= 0.0) || !tail.is_finite() {
                    return Err(Error::BadParameter("declared tail must be finite and non-negative"));
                }
                Ok(lengths.iter().skip(n - 1).sum::<f64>() + tail)
            }
        }
    }
}

/// Input of [`build_nested_counterexample`].
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleRecipe {
    /// Number of pairs `N`.
    pub pairs: usize,
    pub rule: LengthRule,
    /// Euclidean radius shared by all circles.
    pub radius: f64,
    /// Hyperbolic distance between the two circles of a pair.
    pub pair_distance: f64,
}

impl CounterexampleRecipe {
    /// `ℓᵢ = 2⁻ⁱ` with unit-diameter circles.
    pub fn halving(pairs: usize) -> Self {
        CounterexampleRecipe {
            pairs,
            rule: LengthRule::Geometric {
                scale: 1.0,
                ratio: 0.5,
            },
            radius: 0.5,
            pair_distance: 2.0,
        }
    }

    /// `ℓ₁ … ℓ_{N−1}`, the lengths realized between consecutive pairs.
    pub fn lengths(&self) -> Result<Vec<f64>> {
        (1..self.pairs)
            .map(|i| match self.rule.length(i) {
                Some(l) if l > 0.0 && l.is_finite() => Ok(l),
                Some(l) => Err(Error::BadLengths { index: i, length: l }),
                None => Err(Error::BadParameter("too few explicit lengths")),
            })
            .collect()
    }
}

/// A Schottky-like group whose translates nest down to a circle.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedCounterexample {
    pub sys: CircleSystem,
    /// `C₁, g₁(C₂), g₁g₂(C₃), …`
    pub chain: NestedChain,
    /// Euclidean radius of the limit of the infinite chain is at least this.
    pub limit_radius_lower_bound: f64,
    /// Bound on the hyperbolic length still to travel past the last circle.
    pub tail_bound: f64,
    /// The circles are admissible but the exterior is not a fundamental domain.
    pub schottky_like_only: bool,
}

/// Circles orthogonal to the real line, marching right.
///
/// Pair `i` has circles `Cᵢ` and `Cᵢ′` at hyperbolic distance
/// `pair_distance`; `Cᵢ′` and `Cᵢ₊₁` are `ℓᵢ` apart. The generator `gᵢ` maps
/// the outside of `Cᵢ′` into `Cᵢ` (so the system stores `c = Cᵢ′`,
/// `c_prime = Cᵢ`). It is the canonical pairing followed by a translation
/// along `Cᵢ` that sends the foot of the orthogeodesic `δᵢ` on `Cᵢ′` to the
/// foot of `δᵢ₋₁` on `Cᵢ`. The images of the `δᵢ` then join into one
/// geodesic crossing every circle of the chain at right angles, and the
/// chain converges to the circle orthogonal to it at distance `Σ_{i ≥ N} ℓᵢ`
/// past the last one.
pub fn build_nested_counterexample(recipe: &CounterexampleRecipe) -> Result<NestedCounterexample> {
    let n = recipe.pairs;
    if n < 2 {
        return Err(Error::BadParameter("need at least two pairs"));
    }
    let r = recipe.radius;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::BadRadius(r));
    }
    if !(recipe.pair_distance > 0.0) || !recipe.pair_distance.is_finite() {
        return Err(Error::BadParameter("pair distance must be positive"));
    }
    let lengths = recipe.lengths()?;
    let tail = recipe.rule.tail_bound(n)?;

    // Equal circles at distance ℓ have centres 2r·cosh(ℓ/2) apart.
    let spacing = |l: f64| 2.0 * r + 2.0 * r * cosh_minus_one(l / 2.0);
    let mut inner = Vec::with_capacity(n);
    let mut outer = Vec::with_capacity(n);
    let mut x = 0.0;
    for i in 0..n {
        inner.push(x);
        x += spacing(recipe.pair_distance);
        outer.push(x);
        if i + 1 < n {
            x += spacing(lengths[i]);
        }
    }
    let circle = |x: f64| OrientedCircle::new(Complex64::new(x, 0.0), r);

    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let c = circle(outer[i])?;
        let c_prime = circle(inner[i])?;
        let mut g = pair_circles(&c, &c_prime, 0.0)?;
        if i > 0 && i + 1 < n {
            let source = g.apply_finite(foot(outer[i], inner[i + 1], r));
            let target = foot(inner[i], outer[i - 1], r);
            g = translate_along(inner[i] - r, inner[i] + r, source, target)?.compose(&g);
        }
        pairs.push(CirclePair::new(i, c, c_prime, g));
    }
    let sys = CircleSystem::new(pairs);

    let mut circles = Vec::with_capacity(n);
    let mut prefix = Moebius::IDENTITY;
    let mut letters = Vec::with_capacity(n);
    for (i, p) in sys.pairs().iter().enumerate() {
        circles.push(TranslatedCircle {
            word: Word::from_letters(letters.clone())?,
            base: CircleId {
                pair: i,
                side: Side::CPrime,
            },
            circle: prefix.apply_circle(&p.c_prime)?,
            depth: i + 1,
        });
        prefix = prefix.compose(&p.map);
        letters.push(Letter::new(i, false));
    }
    let chain = NestedChain {
        circles,
        maximal: true,
    };
    let last = &chain.circles[n - 1].circle;
    let before = &chain.circles[n - 2].circle;
    let limit_radius_lower_bound = shrink_along_perpendicular(before, last, tail)?;

    Ok(NestedCounterexample {
        sys,
        chain,
        limit_radius_lower_bound,
        tail_bound: tail,
        schottky_like_only: true,
    })
}

/// The two real points symmetric in both circles (centres `a`, `b` on the
/// real line), nearest to `a` first.
fn limit_points(a: f64, ra: f64, b: f64, rb: f64) -> (f64, f64) {
    let d = (b - a).abs();
    let u = (b - a).signum();
    let q = (d * d + ra * ra - rb * rb) / d;
    let disc = (d - ra - rb) * (d - ra + rb) * (d + ra - rb) * (d + ra + rb);
    let far = 0.5 * (q + q.signum() * sqrt(disc.max(0.0)) / d);
    (a + u * ra * ra / far, a + u * far)
}

/// Foot on the circle at `a` of the common perpendicular to the circle at `b`
/// (both of radius `r`), in the upper half-plane.
fn foot(a: f64, b: f64, r: f64) -> Complex64 {
    let (p, q) = limit_points(a, r, b, r);
    let mid = 0.5 * (p + q);
    let half = 0.5 * (q - p).abs();
    let dist = (mid - a).abs();
    Complex64::new(a + (mid - a).signum() * r * r / dist, r * half / dist)
}

/// Hyperbolic translation along the geodesic from `u` to `v` moving `from`
/// to `to`, both on that geodesic.
fn translate_along(u: f64, v: f64, from: SpherePoint, to: Complex64) -> Result<Moebius> {
    let t = Moebius::from_real(1.0, -u, -1.0, v)?;
    let y1 = t.apply(from).as_finite().ok_or(Error::ImageIsLine)?.norm();
    let y2 = t.apply_finite(to).as_finite().ok_or(Error::ImageIsLine)?.norm();
    let k = Moebius::scaling(Complex64::new(y2 / y1, 0.0))?;
    Ok(t.inverse().compose(&k).compose(&t))
}

/// Radius of the circle nested inside `inner`, orthogonal to the common
/// perpendicular of `outer` and `inner`, at distance `tail` past `inner`.
fn shrink_along_perpendicular(
    outer: &OrientedCircle,
    inner: &OrientedCircle,
    tail: f64,
) -> Result<f64> {
    let (a, ra) = (outer.center().re, outer.radius());
    let (b, rb) = (inner.center().re, inner.radius());
    if (b - a).abs() <= 1e-14 * ra {
        return Ok(rb * exp(-tail));
    }
    let (p_in, p_out) = limit_points(a, ra, b, rb);
    let s = Moebius::from_real(1.0, -p_in, 1.0, -p_out)?;
    let rho = s
        .apply_finite(Complex64::new(b + rb, 0.0))
        .as_finite()
        .ok_or(Error::ImageIsLine)?
        .norm();
    let limit = OrientedCircle::new(Complex64::new(0.0, 0.0), rho * exp(-tail))?;
    Ok(s.inverse().apply_circle(&limit)?.radius())
}
