//! Truncated Cayley-tree enumeration of a Schottky group.
//!
//! Vertices of the tree are reduced words `w`; the edge from `w` to `w·s`
//! carries the circle `w(B(s))`, where `B(gᵢ) = Cᵢ′` and `B(gᵢ⁻¹) = Cᵢ`.
//! Edge depth is `|w·s|`, so base circles sit at depth 1.
//!
//! Every enumeration splits into the `2k` subtrees below the first letter.
//! The `*_subtree` functions compute one of them; merging the parts in
//! alphabet order reproduces the sequential result bit for bit.

mod stats;
mod tree;
mod word;

use alloc::vec::Vec;

pub use stats::{
    census_large, diameter_profile, min_plane_distance, Census, CensusRow, DepthRow, DepthStats,
    DiameterProfile, ProfileVerdict, DEFAULT_PLAUSIBILITY_THRESHOLD,
};
pub use word::{ball_size, enumerate_words, sphere_size, Budget, Letter, Word};

use crate::config::{CircleId, CircleSystem};
use crate::math::PI;
use crate::moebius::{OrientedCircle, SpherePoint};
use crate::{Complex64, Error, Result};
use tree::{walk_subtree, Alphabet};

/// A configuration circle moved by a group element: `circle = word(base)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslatedCircle {
    /// The map applied to the base circle; the edge word is `word·s`.
    pub word: Word,
    pub base: CircleId,
    pub circle: OrientedCircle,
    /// Tree depth of the edge, `|word| + 1`.
    pub depth: usize,
}

impl TranslatedCircle {
    /// Largest relative deviation, over three witness points of the base
    /// circle, of their images from `self.circle`.
    pub fn witness_error(&self, sys: &CircleSystem) -> f64 {
        let alphabet = Alphabet::new(sys);
        let m = alphabet.word_map(self.word.letters());
        let base = sys.circle(self.base);
        let mut worst = 0.0f64;
        for j in 0..3 {
            let p = base.point_at(2.0 * PI * j as f64 / 3.0);
            let err = match m.apply_finite(p) {
                SpherePoint::Finite(q) => {
                    ((q - self.circle.center()).norm() - self.circle.radius()).abs()
                        / self.circle.radius()
                }
                SpherePoint::Infinity => f64::INFINITY,
            };
            worst = worst.max(err);
        }
        worst
    }

    pub fn verify(&self, sys: &CircleSystem) -> bool {
        self.witness_error(sys) <= crate::tol::GEOMETRIC
    }
}

/// Circles along one geodesic ray of the tree, outermost first.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedChain {
    pub circles: Vec<TranslatedCircle>,
    /// The chain follows a full ray to the truncation depth.
    pub maximal: bool,
}

impl NestedChain {
    /// Each closed disc strictly contains the next.
    pub fn is_nested(&self) -> bool {
        self.circles
            .windows(2)
            .all(|w| w[0].circle.strictly_contains(&w[1].circle))
    }

    pub fn diameters(&self) -> Vec<f64> {
        self.circles
            .iter()
            .map(|c| c.circle.spherical_diameter())
            .collect()
    }
}

/// First letters of the `2k` subtrees in canonical order.
pub fn subtree_roots(sys: &CircleSystem) -> Vec<Letter> {
    Letter::alphabet(sys.rank()).collect()
}

/// Edges in the radius-`depth` ball: the ball's vertex count minus one.
pub fn edge_count(k: usize, depth: usize) -> u64 {
    ball_size(k, depth).saturating_sub(1)
}

fn nonempty(sys: &CircleSystem) -> Result<()> {
    if sys.is_empty() {
        Err(Error::BadParameter("configuration has no circle pairs"))
    } else {
        Ok(())
    }
}

/// Translated circles of one subtree, bucketed by depth (index `m - 1`).
pub fn translated_circles_subtree(
    sys: &CircleSystem,
    first: Letter,
    depth: usize,
) -> Vec<Vec<TranslatedCircle>> {
    let alphabet = Alphabet::new(sys);
    let mut layers: Vec<Vec<TranslatedCircle>> = (0..depth).map(|_| Vec::new()).collect();
    walk_subtree(&alphabet, first, depth, &mut |e| {
        let m = e.letters.len();
        let s = e.letters[m - 1];
        layers[m - 1].push(TranslatedCircle {
            word: Word::from_reduced(&e.letters[..m - 1]),
            base: alphabet.ids[s.index()],
            circle: *e.circle,
            depth: m,
        });
    });
    layers
}

/// Concatenates subtree layers depth by depth, subtrees in the given order.
pub fn merge_translated(parts: Vec<Vec<Vec<TranslatedCircle>>>) -> Vec<TranslatedCircle> {
    let depth = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut parts: Vec<_> = parts.into_iter().map(|p| p.into_iter()).collect();
    let mut out = Vec::new();
    for _ in 0..depth {
        for p in parts.iter_mut() {
            if let Some(layer) = p.next() {
                out.extend(layer);
            }
        }
    }
    out
}

/// One circle per tree edge of depth `1..=depth`, ordered by depth and then
/// lexicographically by edge word.
pub fn translated_circles(
    sys: &CircleSystem,
    depth: usize,
    budget: Budget,
) -> Result<Vec<TranslatedCircle>> {
    nonempty(sys)?;
    budget.check(edge_count(sys.rank(), depth))?;
    let parts = subtree_roots(sys)
        .into_iter()
        .map(|s| translated_circles_subtree(sys, s, depth))
        .collect();
    Ok(merge_translated(parts))
}

/// Chains of one subtree, one per leaf word, lexicographically.
pub fn maximal_chains_subtree(sys: &CircleSystem, first: Letter, depth: usize) -> Vec<NestedChain> {
    let alphabet = Alphabet::new(sys);
    let mut stack: Vec<TranslatedCircle> = Vec::with_capacity(depth);
    let mut out = Vec::new();
    walk_subtree(&alphabet, first, depth, &mut |e| {
        let m = e.letters.len();
        let s = e.letters[m - 1];
        stack.truncate(m - 1);
        stack.push(TranslatedCircle {
            word: Word::from_reduced(&e.letters[..m - 1]),
            base: alphabet.ids[s.index()],
            circle: *e.circle,
            depth: m,
        });
        if m == depth {
            out.push(NestedChain {
                circles: stack.clone(),
                maximal: true,
            });
        }
    });
    out
}

/// One chain per reduced word of length `depth`: its `m`-th circle is the
/// edge circle at depth `m` along the word.
pub fn maximal_chains(sys: &CircleSystem, depth: usize, budget: Budget) -> Result<Vec<NestedChain>> {
    nonempty(sys)?;
    if depth == 0 {
        return Ok(Vec::new());
    }
    let leaves = sphere_size(sys.rank(), depth);
    budget.check(leaves.saturating_mul(depth as u64))?;
    Ok(subtree_roots(sys)
        .into_iter()
        .flat_map(|s| maximal_chains_subtree(sys, s, depth))
        .collect())
}

/// Limit points from the words of length `depth` in one subtree.
pub fn limit_set_subtree(sys: &CircleSystem, first: Letter, depth: usize) -> Vec<SpherePoint> {
    let alphabet = Alphabet::new(sys);
    let mut out = Vec::new();
    walk_subtree(&alphabet, first, depth, &mut |e| {
        if e.letters.len() == depth {
            out.push(attracting_point(&alphabet, e.letters));
        }
    });
    out
}

/// Attracting fixed point of `w = u v u⁻¹`, computed as `u(v⁺)` with `v`
/// cyclically reduced.
fn attracting_point(alphabet: &Alphabet, letters: &[Letter]) -> SpherePoint {
    let k = Word::from_reduced(letters).conjugator_len();
    let u = alphabet.word_map(&letters[..k]);
    let v = alphabet.word_map(&letters[k..letters.len() - k]);
    let fixed = match v.fixed_points() {
        Ok(fp) => fp.attracting(),
        Err(_) => return SpherePoint::Finite(Complex64::new(f64::NAN, f64::NAN)),
    };
    u.apply(fixed)
}

/// Attracting fixed points of all reduced words of length `depth`, in word
/// order. Each lies in the disc bounded by the base circle of the word's
/// first letter.
pub fn limit_set_sample(sys: &CircleSystem, depth: usize, budget: Budget) -> Result<Vec<SpherePoint>> {
    nonempty(sys)?;
    if depth == 0 {
        return Ok(Vec::new());
    }
    budget.check(sphere_size(sys.rank(), depth))?;
    Ok(subtree_roots(sys)
        .into_iter()
        .flat_map(|s| limit_set_subtree(sys, s, depth))
        .collect())
}

/// The circle bounding the subtree of `first`; every translate and limit
/// point of that subtree lies in its disc.
pub fn subtree_circle(sys: &CircleSystem, first: Letter) -> OrientedCircle {
    *Alphabet::new(sys).base(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CirclePair;

    fn circle(x: f64, y: f64, r: f64) -> OrientedCircle {
        OrientedCircle::new(Complex64::new(x, y), r).unwrap()
    }

    fn single() -> CircleSystem {
        CircleSystem::new(alloc::vec![CirclePair::canonical(
            0,
            circle(-2.0, 0.0, 1.0),
            circle(2.0, 0.0, 1.0),
            0.0
        )
        .unwrap()])
    }

    fn double() -> CircleSystem {
        CircleSystem::new(alloc::vec![
            CirclePair::canonical(0, circle(-2.0, 0.0, 1.0), circle(2.0, 0.0, 1.0), 0.0).unwrap(),
            CirclePair::canonical(1, circle(0.0, -2.0, 1.0), circle(0.0, 2.0, 1.0), 0.3).unwrap(),
        ])
    }

    #[test]
    fn edge_counts() {
        let sys = double();
        assert_eq!(translated_circles(&sys, 2, Budget::default()).unwrap().len(), 16);
        assert!(translated_circles(&sys, 0, Budget::default()).unwrap().is_empty());
        let base = translated_circles(&sys, 1, Budget::default()).unwrap();
        assert_eq!(base.len(), 4);
        assert_eq!(base[0].circle, sys.pairs()[0].c_prime);
        assert_eq!(base[1].circle, sys.pairs()[0].c);
    }

    #[test]
    fn witnesses_hold() {
        let sys = double();
        let circles = translated_circles(&sys, 4, Budget::default()).unwrap();
        for t in &circles {
            assert!(t.verify(&sys), "{} {:e}", t.word, t.witness_error(&sys));
        }
        for w in circles.windows(2) {
            assert!(w[0].depth <= w[1].depth);
        }
    }

    #[test]
    fn chains_nest() {
        let sys = double();
        let chains = maximal_chains(&sys, 3, Budget::default()).unwrap();
        assert_eq!(chains.len(), 36);
        assert!(chains.iter().all(NestedChain::is_nested));
        let chains = maximal_chains(&single(), 5, Budget::default()).unwrap();
        assert_eq!(chains.len(), 2);
        for ch in &chains {
            let d = ch.diameters();
            assert!(d.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn single_pair_limit_points() {
        let r3 = 3f64.sqrt();
        for depth in 1..5 {
            let pts = limit_set_sample(&single(), depth, Budget::default()).unwrap();
            assert_eq!(pts.len(), 2);
            let a = pts[0].as_finite().unwrap();
            let b = pts[1].as_finite().unwrap();
            assert!((a - Complex64::new(r3, 0.0)).norm() < 1e-10);
            assert!((b + Complex64::new(r3, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn limit_points_lie_in_their_subtree_disc() {
        let sys = double();
        for s in subtree_roots(&sys) {
            let disc = subtree_circle(&sys, s);
            for p in limit_set_subtree(&sys, s, 3) {
                assert!(disc.contains(p));
            }
        }
        assert_eq!(limit_set_sample(&sys, 2, Budget::default()).unwrap().len(), 12);
    }

    #[test]
    fn budget_guards_enumeration() {
        let err = translated_circles(&double(), 12, Budget::new(100)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(limit_set_sample(&double(), 12, Budget::new(100)).is_err());
        assert!(maximal_chains(&double(), 12, Budget::new(100)).is_err());
    }
}
