//! Permutations of `{1..n}` as image arrays.
//!
//! A [`Permutation`] stores `images[i-1] = σ(i)` with 1-based values, matching
//! the JSON interchange format. Composition is function composition:
//! `(σ∘τ)(i) = σ(τ(i))`, so in a product the right factor acts first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "σ{:?}", self.images)
    }
}

impl Permutation {
    /// Builds a permutation from a 1-based image array, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(images.clone()));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ rhs`: `rhs` acts first.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.size(), rhs.size(), "composing permutations of unequal size");
        Permutation {
            images: rhs.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// The involution `ω_T` reversing the labels of `interval` inside `{1..n}`.
    pub fn reversal(interval: Interval, n: usize) -> Result<Permutation> {
        if interval.hi() > n {
            return Err(Error::IntervalOutOfRange {
                lo: interval.lo(),
                hi: interval.hi(),
                n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        for i in interval.lo()..=interval.hi() {
            images[i - 1] = interval.lo() + interval.hi() - i;
        }
        Ok(Permutation { images })
    }

    /// `ω_S`, the longest element: full reversal of `{1..n}`.
    pub fn full_reversal(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// The expansion morphism `Σ_n → Σ_{2n}`: `τ(2i−1) = 2σ(i)−1`, `τ(2i) = 2σ(i)`.
    pub fn expand(&self) -> Permutation {
        let n = self.size();
        let mut images = vec![0; 2 * n];
        for i in 1..=n {
            let v = self.apply(i);
            images[2 * i - 2] = 2 * v - 1;
            images[2 * i - 1] = 2 * v;
        }
        Permutation { images }
    }

    /// Simple expansion duplicating label `m`: the two copies `m, m+1` occupy
    /// adjacent positions where label `m` sat, and labels above `m` shift up.
    pub fn simple_expand(&self, m: usize) -> Result<Permutation> {
        let n = self.size();
        if m == 0 || m > n {
            return Err(Error::LeafOutOfRange { index: m, count: n });
        }
        let shift = |v: usize| if v > m { v + 1 } else { v };
        let mut images = Vec::with_capacity(n + 1);
        for i in 1..=n {
            let v = self.apply(i);
            if v == m {
                images.push(m);
                images.push(m + 1);
            } else {
                images.push(shift(v));
            }
        }
        Ok(Permutation { images })
    }

    /// Simple expansion duplicating the domain slot `i`: positions `(i, i+1)`
    /// map to the adjacent image pair `(σ(i)', σ(i)'+1)`. This is the
    /// expansion that word-level one-leaf expansion projects onto.
    pub fn simple_expand_at_position(&self, i: usize) -> Result<Permutation> {
        Ok(self.inverse().simple_expand(i)?.inverse())
    }

    /// True when `σ(i) ≡ i + r (mod n)` for some fixed `r` (1-based circle).
    pub fn is_rotation(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let r = self.images[0]; // σ(1)
        (1..=n).all(|i| self.apply(i) == (i - 1 + r - 1) % n + 1)
    }

    /// Conjugate `self` by the full reversal: `ω_S · σ · ω_S`.
    pub fn conjugate_by_full_reversal(&self) -> Permutation {
        let n = self.size();
        let w = Permutation::full_reversal(n);
        w.compose(self).compose(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_matches_definition() {
        let w = Permutation::reversal(Interval::new(2, 5).unwrap(), 6).unwrap();
        assert_eq!(w.images(), &[1, 5, 4, 3, 2, 6]);
        let full = Permutation::reversal(Interval::new(1, 6).unwrap(), 6).unwrap();
        assert_eq!(full, Permutation::full_reversal(6));
    }

    #[test]
    fn reversal_is_involution() {
        for n in 2..=8usize {
            for lo in 1..n {
                for hi in lo + 1..=n {
                    let w = Permutation::reversal(Interval::new(lo, hi).unwrap(), n).unwrap();
                    assert!(w.compose(&w).is_identity(), "ω[{lo},{hi}]² ≠ id in Σ{n}");
                }
            }
        }
    }

    #[test]
    fn expansion_of_three_cycle() {
        // σ = (1→2, 2→3, 3→1) expands to (3,4,5,6,1,2).
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(s.expand().images(), &[3, 4, 5, 6, 1, 2]);
    }

    #[test]
    fn expansion_is_homomorphism() {
        let a = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let b = Permutation::new(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(a.compose(&b).expand(), a.expand().compose(&b.expand()));
    }

    #[test]
    fn simple_expand_identity() {
        let id = Permutation::identity(3);
        assert_eq!(id.simple_expand(2).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn simple_expand_transposition() {
        // Duplicating label 1 of (12) ∈ Σ₂: the block (1,2) lands where 1 went.
        let s = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(s.simple_expand(1).unwrap().images(), &[3, 1, 2]);
    }

    #[test]
    fn rotation_detection() {
        assert!(Permutation::new(vec![3, 4, 1, 2]).unwrap().is_rotation());
        assert!(Permutation::identity(5).is_rotation());
        assert!(!Permutation::new(vec![2, 1, 3, 4]).unwrap().is_rotation());
    }
}
