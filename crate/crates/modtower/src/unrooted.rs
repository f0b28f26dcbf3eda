//! Unrooted planar trees with cyclic leaf labelings.
//!
//! Strata of the un-covered moduli space can be labeled by unrooted planar
//! trees with `n+1` leaves carrying a cyclic labeling `0..n`. We store such a
//! tree planted at the leaf labeled `0`: the remainder is an ordinary rooted
//! planar tree with `n` leaves whose left-to-right order is the
//! counterclockwise order after `0`, plus a permutation assigning the labels
//! `1..n`.
//!
//! The identification moves reflect one of the two sides cut off by an
//! internal edge. Reflecting the side away from leaf `0` is exactly the rooted
//! move `∇̃_v`; reflecting the side containing leaf `0` is that move followed
//! by a reflection of the whole plane. The whole-plane reflection itself is
//! kept as a third generator: it equals an up-move composed with a down-move
//! whenever an internal edge exists, and it is the only identification left on
//! star trees.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::Permutation;
use crate::tree::{LabeledTree, PlanarTree};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct UnrootedLabeledTree {
    /// The tree planted at the leaf labeled 0 (not counted in `leaf_count`).
    pub tree: PlanarTree,
    /// Position → label over the remaining `n` leaves.
    pub perm: Permutation,
}

impl UnrootedLabeledTree {
    pub fn new(tree: PlanarTree, perm: Permutation) -> Result<Self> {
        let lt = LabeledTree::new(tree, perm)?;
        Ok(UnrootedLabeledTree {
            tree: lt.tree,
            perm: lt.perm,
        })
    }

    /// Ambient size `n`; the unrooted tree has `n + 1` leaves.
    pub fn ambient(&self) -> usize {
        self.perm.size()
    }

    /// Internal edges of the unrooted tree, indexed by the leaf span of the
    /// side away from leaf 0.
    pub fn internal_edges(&self) -> Vec<Interval> {
        self.tree
            .to_nested()
            .expect("stored tree is valid")
            .intervals()
            .to_vec()
    }

    /// Reflects the side of edge `e` away from leaf 0 (the rooted `∇̃` move).
    pub fn nabla_bar_down(&self, e: Interval) -> Result<Self> {
        if self.internal_edges().is_empty() {
            return Err(Error::NoInternalEdge);
        }
        let lt = LabeledTree {
            tree: self.tree.clone(),
            perm: self.perm.clone(),
        };
        let moved = lt.nabla_tilde(e)?;
        Ok(UnrootedLabeledTree {
            tree: moved.tree,
            perm: moved.perm,
        })
    }

    /// Reflects the side of edge `e` containing leaf 0. The same geometric
    /// edge has span `mirrored_span(e)` in the resulting tree.
    pub fn nabla_bar_up(&self, e: Interval) -> Result<Self> {
        Ok(self.nabla_bar_down(e)?.reflect_all())
    }

    /// Span of an edge after a whole-plane reflection.
    pub fn mirrored_span(&self, e: Interval) -> Interval {
        e.reflect_full(self.ambient())
    }

    /// Mirror image of the whole plane, re-read from leaf 0.
    pub fn reflect_all(&self) -> Self {
        UnrootedLabeledTree {
            tree: self.tree.mirror(),
            perm: self
                .perm
                .compose(&Permutation::full_reversal(self.ambient())),
        }
    }

    /// The full equivalence orbit under up/down moves and reflection.
    pub fn orbit(&self) -> Vec<Self> {
        let mut seen: BTreeSet<UnrootedLabeledTree> = BTreeSet::new();
        let mut queue = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(t) = queue.pop() {
            let mut nexts = vec![t.reflect_all()];
            for e in t.internal_edges() {
                nexts.push(t.nabla_bar_down(e).expect("edge exists"));
            }
            for n in nexts {
                if seen.insert(n.clone()) {
                    queue.push(n);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Canonical representative: the minimum of the orbit.
    pub fn canonical(&self) -> Self {
        self.orbit().into_iter().next().expect("orbit nonempty")
    }

    /// True when some representative carries consecutive labels around the
    /// circle, i.e. the class lies in the distinguished associahedron.
    pub fn has_cyclic_labeling(&self) -> bool {
        self.orbit().iter().any(|t| t.perm.is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn moves_are_involutions() {
        let c = crate::interval::NestedCollection::new(5, vec![iv(2, 4)]).unwrap();
        let t = UnrootedLabeledTree::new(
            PlanarTree::from_nested(&c),
            Permutation::new(vec![3, 1, 5, 2, 4]).unwrap(),
        )
        .unwrap();
        let e = iv(2, 4);
        assert_eq!(t.nabla_bar_down(e).unwrap().nabla_bar_down(e).unwrap(), t);
        let up = t.nabla_bar_up(e).unwrap();
        let e2 = t.mirrored_span(e);
        assert_eq!(up.nabla_bar_up(e2).unwrap(), t);
        assert_eq!(t.reflect_all().reflect_all(), t);
    }

    #[test]
    fn star_has_no_edge_moves() {
        let t =
            UnrootedLabeledTree::new(PlanarTree::star(4), Permutation::identity(4)).unwrap();
        assert!(t.nabla_bar_down(iv(1, 2)).is_err());
        assert_eq!(t.orbit().len(), 2); // itself and its reflection
    }

    #[test]
    fn up_then_down_is_global_reflection() {
        // On a 5-leaf instance, ∇̄up ∘ ∇̄down at one edge reflects the whole
        // tree, which is the rooted ∇̃ on one side composed with the mirror.
        let c = crate::interval::NestedCollection::new(4, vec![iv(1, 2)]).unwrap();
        let t = UnrootedLabeledTree::new(
            PlanarTree::from_nested(&c),
            Permutation::new(vec![2, 4, 1, 3]).unwrap(),
        )
        .unwrap();
        let down = t.nabla_bar_down(iv(1, 2)).unwrap();
        let both = down.nabla_bar_up(iv(1, 2)).unwrap();
        assert_eq!(both, t.reflect_all());
    }
}
