use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A symmetric generator `gᵢ` or `gᵢ⁻¹`.
///
/// Letters order as `g₁, g₁⁻¹, g₂, g₂⁻¹, …`; words inherit that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    /// Zero-based generator index.
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(2 * generator as u32 + u32::from(inverse))
    }

    pub(crate) fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    /// Position in the ordered alphabet `0..2k`.
    pub fn index(&self) -> usize {
        self.0 as usize
    }

    pub fn generator(&self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(&self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(&self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The alphabet of `k` generators in canonical order.
    pub fn alphabet(k: usize) -> impl Iterator<Item = Letter> + Clone {
        (0..2 * k).map(Letter::from_index)
    }
}

impl fmt::Display for Letter {
    /// Signed one-based generator number: `3` is `g₃`, `-3` is `g₃⁻¹`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator() + 1;
        if self.is_inverse() {
            write!(f, "-{g}")
        } else {
            write!(f, "{g}")
        }
    }
}

/// A reduced word in the symmetric generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Fails with [`Error::BadParameter`] if two adjacent letters cancel.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if letters.windows(2).any(|w| w[1] == w[0].inverse()) {
            return Err(Error::BadParameter("word is not reduced"));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_reduced(letters: &[Letter]) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[1] != w[0].inverse()));
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Splits `w = u v u⁻¹` with `v` cyclically reduced; returns `|u|`.
    pub fn conjugator_len(&self) -> usize {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == w[w.len() - 1 - k].inverse() {
            k += 1;
        }
        k
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.conjugator_len() == 0
    }
}

impl fmt::Display for Word {
    /// Comma-separated signed generators; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Limit on the number of items an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

impl Budget {
    pub const DEFAULT_CAP: u64 = 10_000_000;

    pub fn new(cap: u64) -> Self {
        Budget { cap }
    }

    pub fn check(&self, needed: u64) -> Result<()> {
        if needed > self.cap {
            Err(Error::BudgetExceeded {
                needed,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_CAP)
    }
}

/// Reduced words of length exactly `m` over `k` generators: `2k(2k-1)^(m-1)`,
/// saturating at `u64::MAX`.
pub fn sphere_size(k: usize, m: usize) -> u64 {
    if m == 0 {
        return 1;
    }
    let k = k as u64;
    let mut n = 2 * k;
    for _ in 1..m {
        n = n.saturating_mul(2 * k - 1);
    }
    n
}

/// Reduced words of length at most `n`, i.e. vertices of the radius-`n` ball
/// in the Cayley tree.
pub fn ball_size(k: usize, n: usize) -> u64 {
    (0..=n).fold(0u64, |acc, m| acc.saturating_add(sphere_size(k, m)))
}

/// All reduced words of length `≤ n`, shortest first, then lexicographically.
pub fn enumerate_words(k: usize, n: usize, budget: Budget) -> Result<Vec<Word>> {
    if k == 0 {
        return Err(Error::BadParameter("need at least one generator"));
    }
    budget.check(ball_size(k, n))?;
    let mut out = Vec::with_capacity(ball_size(k, n) as usize);
    out.push(Word::identity());
    let mut layer_start = 0;
    for _ in 0..n {
        let layer_end = out.len();
        for i in layer_start..layer_end {
            let last = out[i].last();
            for l in Letter::alphabet(k) {
                if Some(l.inverse()) == last {
                    continue;
                }
                let mut letters = out[i].0.clone();
                letters.push(l);
                out.push(Word(letters));
            }
        }
        layer_start = layer_end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn counts() {
        let words = enumerate_words(2, 1, Budget::default()).unwrap();
        assert_eq!(words.iter().filter(|w| w.len() == 1).count(), 4);
        let words = enumerate_words(2, 3, Budget::default()).unwrap();
        assert_eq!(words.iter().filter(|w| w.len() == 3).count(), 36);
        let words = enumerate_words(1, 5, Budget::default()).unwrap();
        let long: Vec<_> = words.iter().filter(|w| w.len() == 5).collect();
        assert_eq!(long.len(), 2);
        assert!(long[0].letters().iter().all(|l| !l.is_inverse()));
        assert!(long[1].letters().iter().all(|l| l.is_inverse()));
    }

    #[test]
    fn order_is_shortlex() {
        let words = enumerate_words(2, 3, Budget::default()).unwrap();
        for pair in words.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
        assert_eq!(words[1].to_string(), "1");
        assert_eq!(words[2].to_string(), "-1");
        assert_eq!(words[3].to_string(), "2");
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_words(3, 12, Budget::new(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 1000, .. }));
    }

    #[test]
    fn reducedness_is_checked() {
        let a = Letter::new(0, false);
        assert!(Word::from_letters(alloc::vec![a, a.inverse()]).is_err());
        assert!(Word::from_letters(alloc::vec![a, a]).is_ok());
    }

    #[test]
    fn conjugator_split() {
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        let w = Word::from_letters(alloc::vec![a, b, a.inverse()]).unwrap();
        assert_eq!(w.conjugator_len(), 1);
        let w = Word::from_letters(alloc::vec![a, b, b, a]).unwrap();
        assert!(w.is_cyclically_reduced());
    }
}
