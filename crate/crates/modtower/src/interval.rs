//! Leaf-label intervals and nested collections.
//!
//! An interval `[i,j]` of leaf labels stands in for the Coxeter generator
//! subset `{σ_i, …, σ_{j−1}}` of the symmetric group. For the type-A Coxeter
//! graph the connected subsets are exactly the intervals, so this file is the
//! only place where that identification has to be spelled out: two intervals
//! have a connected union of generator sets exactly when they share a leaf
//! label, and containment of generator subsets is containment of intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A leaf-label interval `[lo, hi]` with `1 ≤ lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct Interval {
    lo: usize,
    hi: usize,
}

impl std::fmt::Debug for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl From<Interval> for (usize, usize) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl TryFrom<(usize, usize)> for Interval {
    type Error = Error;
    fn try_from((lo, hi): (usize, usize)) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo >= hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Number of leaf labels in the support, `hi − lo + 1`.
    pub fn size(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// Proper means not the full interval `[1,n]`.
    pub fn is_proper(&self, n: usize) -> bool {
        !(self.lo == 1 && self.hi == n)
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_label(&self, label: usize) -> bool {
        self.lo <= label && label <= self.hi
    }

    /// No shared leaf label. Abutting intervals such as `[1,2]`, `[3,4]` count
    /// as disjoint: their generator subsets `{σ_1}`, `{σ_3}` are not adjacent.
    pub fn label_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Nestedness condition of Definition 3: contained, containing, or
    /// label-disjoint (the union of generator sets is then disconnected).
    pub fn nested_with(&self, other: &Interval) -> bool {
        self.contains(other) || other.contains(self) || self.label_disjoint(other)
    }

    /// `j_T U = ω_T U ω_T` when `U ⊆ T`, and `U` itself otherwise.
    pub fn conjugate_in(&self, outer: &Interval) -> Interval {
        if outer.contains(self) {
            Interval {
                lo: outer.lo + outer.hi - self.hi,
                hi: outer.lo + outer.hi - self.lo,
            }
        } else {
            *self
        }
    }

    /// `j_S`, conjugation by the full reversal of `{1..n}`.
    pub fn reflect_full(&self, n: usize) -> Interval {
        Interval {
            lo: n + 1 - self.hi,
            hi: n + 1 - self.lo,
        }
    }

    /// Interval after doubling every label: `[2·lo−1, 2·hi]`.
    pub fn expand(&self) -> Interval {
        Interval {
            lo: 2 * self.lo - 1,
            hi: 2 * self.hi,
        }
    }

    /// Interval after duplicating label `m` (ambient grows by one).
    pub fn simple_expand(&self, m: usize) -> Interval {
        let lo = if self.lo > m { self.lo + 1 } else { self.lo };
        let hi = if self.hi >= m { self.hi + 1 } else { self.hi };
        Interval { lo, hi }
    }

    pub fn translate(&self, offset: usize) -> Interval {
        Interval {
            lo: self.lo + offset,
            hi: self.hi + offset,
        }
    }
}

/// The longest element `ω_T` of the parabolic subgroup attached to `T`,
/// as a permutation of `{1..n}`.
pub fn omega(t: Interval, n: usize) -> Result<Permutation> {
    Permutation::reversal(t, n)
}

/// Pairwise nestedness check on an arbitrary set of intervals.
pub fn is_nested(intervals: &[Interval]) -> bool {
    for (k, a) in intervals.iter().enumerate() {
        for b in &intervals[k + 1..] {
            if a != b && !a.nested_with(b) {
                return false;
            }
        }
    }
    true
}

/// A nested collection of proper intervals inside `{1..n}`: the combinatorial
/// avatar of a planar tree with `n` leaves (one interval per non-root internal
/// vertex).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct NestedCollection {
    n: usize,
    /// Sorted by `(lo, hi)`, duplicate-free.
    intervals: Vec<Interval>,
}

impl NestedCollection {
    pub fn new(n: usize, mut intervals: Vec<Interval>) -> Result<Self> {
        intervals.sort();
        intervals.dedup();
        for iv in &intervals {
            if iv.hi > n {
                return Err(Error::IntervalOutOfRange {
                    lo: iv.lo,
                    hi: iv.hi,
                    n,
                });
            }
            if !iv.is_proper(n) {
                return Err(Error::ImproperInterval { lo: iv.lo, hi: iv.hi });
            }
        }
        for (k, a) in intervals.iter().enumerate() {
            for b in &intervals[k + 1..] {
                if !a.nested_with(b) {
                    return Err(Error::NotNested {
                        a_lo: a.lo,
                        a_hi: a.hi,
                        b_lo: b.lo,
                        b_hi: b.hi,
                    });
                }
            }
        }
        Ok(NestedCollection { n, intervals })
    }

    pub fn empty(n: usize) -> Self {
        NestedCollection {
            n,
            intervals: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.intervals.binary_search(iv).is_ok()
    }

    pub fn with_inserted(&self, iv: Interval) -> Result<Self> {
        let mut intervals = self.intervals.clone();
        intervals.push(iv);
        NestedCollection::new(self.n, intervals)
    }

    /// Applies `j_T` to every member. Members inside `T` are reflected, the
    /// rest are untouched; the result is again nested.
    pub fn conjugated_by(&self, t: &Interval) -> NestedCollection {
        let mut intervals: Vec<Interval> =
            self.intervals.iter().map(|u| u.conjugate_in(t)).collect();
        intervals.sort();
        NestedCollection {
            n: self.n,
            intervals,
        }
    }

    /// `j_S`: reflects every member in the full interval `[1,n]`.
    pub fn conjugated_by_full(&self) -> NestedCollection {
        let mut intervals: Vec<Interval> = self
            .intervals
            .iter()
            .map(|u| u.reflect_full(self.n))
            .collect();
        intervals.sort();
        NestedCollection {
            n: self.n,
            intervals,
        }
    }

    /// All `2^len` subsets of the member list (as index bitmasks).
    pub fn subsets(&self) -> impl Iterator<Item = Vec<Interval>> + '_ {
        let k = self.intervals.len();
        (0u64..(1u64 << k)).map(move |mask| {
            (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.intervals[i])
                .collect()
        })
    }
}

/// Orders a set of nested intervals containment-increasingly: a valid linear
/// extension of `⊂`, normalized to (size, lo, hi).
pub fn containment_order(intervals: &mut [Interval]) {
    intervals.sort_by_key(|iv| (iv.size(), iv.lo, iv.hi));
}

/// `ω_{T''} = ω_{T_1}···ω_{T_r}` with inner factors first, as in the stratum
/// equivalence; `subset` need not be pre-sorted.
pub fn omega_product(subset: &[Interval], n: usize) -> Result<Permutation> {
    let mut ordered: Vec<Interval> = subset.to_vec();
    containment_order(&mut ordered);
    let mut acc = Permutation::identity(n);
    // Product ω_{T_1}∘…∘ω_{T_r}: rightmost factor acts first.
    for t in ordered.iter().rev() {
        acc = omega(*t, n)?.compose(&acc);
    }
    Ok(acc)
}

/// `j_{T''} = j_{T_r}···j_{T_1}` applied to a collection: innermost first.
pub fn j_product(collection: &NestedCollection, subset: &[Interval]) -> NestedCollection {
    let mut ordered: Vec<Interval> = subset.to_vec();
    containment_order(&mut ordered);
    let mut acc = collection.clone();
    for t in &ordered {
        acc = acc.conjugated_by(t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn conjugation_example() {
        // j_{[2,5]} [2,3] = [4,5]: the §-example with T_v = {σ2,σ3,σ4}, T_w = {σ2}.
        assert_eq!(iv(2, 3).conjugate_in(&iv(2, 5)), iv(4, 5));
        // Self-conjugation fixes the interval.
        assert_eq!(iv(1, 4).conjugate_in(&iv(1, 4)), iv(1, 4));
        // Disjoint intervals are untouched.
        assert_eq!(iv(4, 5).conjugate_in(&iv(1, 3)), iv(4, 5));
    }

    #[test]
    fn conjugation_is_involutive_inside() {
        for t_lo in 1..6 {
            for t_hi in t_lo + 1..=6 {
                let t = iv(t_lo, t_hi);
                for u_lo in t_lo..=t_hi {
                    for u_hi in u_lo + 1..=t_hi {
                        let u = iv(u_lo, u_hi);
                        assert_eq!(u.conjugate_in(&t).conjugate_in(&t), u);
                    }
                }
            }
        }
    }

    #[test]
    fn nestedness_cases() {
        assert!(is_nested(&[iv(1, 2), iv(3, 4)]));
        assert!(!is_nested(&[iv(1, 2), iv(2, 3)]));
        assert!(is_nested(&[iv(2, 3), iv(1, 3)]));
    }

    #[test]
    fn collection_rejects_improper_and_overlap() {
        assert!(NestedCollection::new(4, vec![iv(1, 4)]).is_err());
        assert!(NestedCollection::new(4, vec![iv(1, 3), iv(2, 4)]).is_err());
        assert!(NestedCollection::new(4, vec![iv(1, 2), iv(5, 6)]).is_err());
    }

    #[test]
    fn omega_product_orders_inner_first() {
        // 𝒯'' = {[2,3],[2,5]} in Σ6: ω_{[2,3]} then ω_{[2,5]}; the product is
        // ω_{[2,3]}∘ω_{[2,5]} read right-to-left.
        let p = omega_product(&[iv(2, 5), iv(2, 3)], 6).unwrap();
        let inner = omega(iv(2, 3), 6).unwrap();
        let outer = omega(iv(2, 5), 6).unwrap();
        assert_eq!(p, inner.compose(&outer));
    }
}
