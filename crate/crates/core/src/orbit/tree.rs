use alloc::vec::Vec;

use super::word::Letter;
use crate::config::{CircleId, CircleSystem, Side};
use crate::moebius::{Moebius, OrientedCircle};

/// Per-letter data: the map and the circle bounding its half of the tree.
///
/// The edge from vertex `w` to `w·s` corresponds to the circle `w(B(s))` with
/// `B(gᵢ) = Cᵢ′` and `B(gᵢ⁻¹) = Cᵢ`, since `gᵢ(D)` sits inside `Cᵢ′`.
#[derive(Debug, Clone)]
pub(crate) struct Alphabet {
    pub maps: Vec<Moebius>,
    pub base: Vec<OrientedCircle>,
    pub ids: Vec<CircleId>,
}

impl Alphabet {
    pub fn new(sys: &CircleSystem) -> Self {
        let mut maps = Vec::with_capacity(2 * sys.rank());
        let mut base = Vec::with_capacity(2 * sys.rank());
        let mut ids = Vec::with_capacity(2 * sys.rank());
        for (pair, p) in sys.pairs().iter().enumerate() {
            maps.push(p.map);
            base.push(p.c_prime);
            ids.push(CircleId {
                pair,
                side: Side::CPrime,
            });
            maps.push(p.map.inverse());
            base.push(p.c);
            ids.push(CircleId {
                pair,
                side: Side::C,
            });
        }
        Alphabet { maps, base, ids }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, l: Letter) -> &Moebius {
        &self.maps[l.index()]
    }

    pub fn base(&self, l: Letter) -> &OrientedCircle {
        &self.base[l.index()]
    }

    pub fn word_map(&self, letters: &[Letter]) -> Moebius {
        letters
            .iter()
            .fold(Moebius::IDENTITY, |acc, l| acc.compose(self.map(*l)))
    }
}

/// One edge of the Cayley tree as seen by a walker.
pub(crate) struct Edge<'a> {
    /// The edge's far vertex `w·s`; its length is the edge depth.
    pub letters: &'a [Letter],
    pub circle: &'a OrientedCircle,
}

/// Depth-first walk over every edge of depth `1..=depth` whose word starts
/// with `first`, in lexicographic (preorder) order.
pub(crate) fn walk_subtree<F>(alphabet: &Alphabet, first: Letter, depth: usize, visit: &mut F)
where
    F: FnMut(&Edge<'_>),
{
    if depth == 0 {
        return;
    }
    let mut letters = Vec::with_capacity(depth);
    descend(alphabet, &mut letters, Moebius::IDENTITY, first, depth, visit);
}

fn descend<F>(
    alphabet: &Alphabet,
    letters: &mut Vec<Letter>,
    prefix: Moebius,
    s: Letter,
    remaining: usize,
    visit: &mut F,
) where
    F: FnMut(&Edge<'_>),
{
    let circle = prefix.apply_circle_unchecked(alphabet.base(s));
    letters.push(s);
    visit(&Edge {
        letters,
        circle: &circle,
    });
    if remaining > 1 {
        let next = prefix.compose_unnormalized(alphabet.map(s));
        let back = s.inverse();
        for i in 0..alphabet.len() {
            let t = Letter::from_index(i);
            if t != back {
                descend(alphabet, letters, next, t, remaining - 1, visit);
            }
        }
    }
    letters.pop();
}
