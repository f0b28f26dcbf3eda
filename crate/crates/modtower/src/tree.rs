//! Rooted planar trees and labeled trees.
//!
//! A [`PlanarTree`] is an ordered rooted tree in which every internal vertex
//! has at least two children (stability). Leaves are implicitly numbered
//! `1..n` left to right; all labeling data lives in the permutation of a
//! [`LabeledTree`]. The bijection with [`NestedCollection`]s sends each
//! non-root internal vertex to the interval of leaf labels below it.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::interval::{Interval, NestedCollection};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    /// The star with `n` leaves (a single leaf when `n = 1`).
    pub fn star(n: usize) -> Self {
        if n == 1 {
            PlanarTree::Leaf
        } else {
            PlanarTree::Node(vec![PlanarTree::Leaf; n])
        }
    }

    /// A binary caret.
    pub fn caret() -> Self {
        PlanarTree::Node(vec![PlanarTree::Leaf, PlanarTree::Leaf])
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(children) => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Checks the stability constraint: every internal vertex has ≥ 2 children.
    pub fn validate(&self) -> Result<()> {
        match self {
            PlanarTree::Leaf => Ok(()),
            PlanarTree::Node(children) => {
                if children.len() < 2 {
                    return Err(Error::InvalidTree(format!(
                        "internal vertex with {} child(ren)",
                        children.len()
                    )));
                }
                children.iter().try_for_each(|c| c.validate())
            }
        }
    }

    /// Leaf spans of the non-root internal vertices, as a nested collection.
    pub fn to_nested(&self) -> Result<NestedCollection> {
        let n = self.leaf_count();
        let mut intervals = Vec::new();
        fn walk(t: &PlanarTree, offset: usize, out: &mut Vec<(usize, usize)>) -> usize {
            match t {
                PlanarTree::Leaf => offset + 1,
                PlanarTree::Node(children) => {
                    let lo = offset + 1;
                    let mut pos = offset;
                    for c in children {
                        pos = walk(c, pos, out);
                    }
                    out.push((lo, pos));
                    pos
                }
            }
        }
        let mut spans = Vec::new();
        walk(self, 0, &mut spans);
        spans.pop(); // drop the root span [1,n]
        for (lo, hi) in spans {
            intervals.push(Interval::new(lo, hi)?);
        }
        NestedCollection::new(n, intervals)
    }

    /// Inverse of [`PlanarTree::to_nested`].
    pub fn from_nested(c: &NestedCollection) -> PlanarTree {
        fn build(lo: usize, hi: usize, intervals: &[Interval]) -> PlanarTree {
            if lo == hi {
                return PlanarTree::Leaf;
            }
            // Maximal intervals strictly inside [lo,hi] become children; bare
            // labels in the gaps become leaves.
            let mut children = Vec::new();
            let mut pos = lo;
            while pos <= hi {
                let best = intervals
                    .iter()
                    .filter(|iv| iv.lo() == pos && iv.hi() <= hi && !(iv.lo() == lo && iv.hi() == hi))
                    .max_by_key(|iv| iv.hi());
                match best {
                    Some(iv) => {
                        let inner: Vec<Interval> = intervals
                            .iter()
                            .filter(|u| iv.contains(u) && *u != iv)
                            .copied()
                            .collect();
                        children.push(build(iv.lo(), iv.hi(), &inner));
                        pos = iv.hi() + 1;
                    }
                    None => {
                        children.push(PlanarTree::Leaf);
                        pos += 1;
                    }
                }
            }
            PlanarTree::Node(children)
        }
        build(1, c.ambient(), c.intervals())
    }

    /// Replaces every leaf by a caret (the dyadic expansion of the tree).
    pub fn expand(&self) -> PlanarTree {
        match self {
            PlanarTree::Leaf => PlanarTree::caret(),
            PlanarTree::Node(children) => {
                PlanarTree::Node(children.iter().map(|c| c.expand()).collect())
            }
        }
    }

    /// Mirror image: reverses the children order of every vertex.
    pub fn mirror(&self) -> PlanarTree {
        match self {
            PlanarTree::Leaf => PlanarTree::Leaf,
            PlanarTree::Node(children) => {
                PlanarTree::Node(children.iter().rev().map(|c| c.mirror()).collect())
            }
        }
    }

    /// Replaces the `i`-th leaf (1-based, left to right) by a caret.
    pub fn with_caret_at_leaf(&self, i: usize) -> Result<PlanarTree> {
        let n = self.leaf_count();
        if i == 0 || i > n {
            return Err(Error::LeafOutOfRange { index: i, count: n });
        }
        fn insert(t: &PlanarTree, target: usize, offset: usize) -> (PlanarTree, usize) {
            match t {
                PlanarTree::Leaf => {
                    let pos = offset + 1;
                    if pos == target {
                        (PlanarTree::caret(), pos)
                    } else {
                        (PlanarTree::Leaf, pos)
                    }
                }
                PlanarTree::Node(children) => {
                    let mut pos = offset;
                    let mut new_children = Vec::with_capacity(children.len());
                    for c in children {
                        let (nc, p) = insert(c, target, pos);
                        new_children.push(nc);
                        pos = p;
                    }
                    (PlanarTree::Node(new_children), pos)
                }
            }
        }
        Ok(insert(self, i, 0).0)
    }

    /// JSON encoding: a leaf is its 1-based index, an internal vertex is the
    /// array of its children, e.g. `[[1,2],3]` for a caret on `(1,2)` joined
    /// with leaf `3`.
    pub fn to_json(&self) -> Value {
        fn enc(t: &PlanarTree, offset: usize) -> (Value, usize) {
            match t {
                PlanarTree::Leaf => (Value::from(offset + 1), offset + 1),
                PlanarTree::Node(children) => {
                    let mut pos = offset;
                    let mut items = Vec::with_capacity(children.len());
                    for c in children {
                        let (v, p) = enc(c, pos);
                        items.push(v);
                        pos = p;
                    }
                    (Value::Array(items), pos)
                }
            }
        }
        enc(self, 0).0
    }

    /// Decodes the nested-array encoding, checking left-to-right numbering.
    pub fn from_json(v: &Value) -> Result<PlanarTree> {
        fn dec(v: &Value, offset: usize) -> Result<(PlanarTree, usize)> {
            match v {
                Value::Number(num) => {
                    let expect = (offset + 1) as u64;
                    if num.as_u64() == Some(expect) {
                        Ok((PlanarTree::Leaf, offset + 1))
                    } else {
                        Err(Error::InvalidTree(format!(
                            "leaf {num} out of order; expected {expect}"
                        )))
                    }
                }
                Value::Array(items) => {
                    let mut pos = offset;
                    let mut children = Vec::with_capacity(items.len());
                    for item in items {
                        let (c, p) = dec(item, pos)?;
                        children.push(c);
                        pos = p;
                    }
                    Ok((PlanarTree::Node(children), pos))
                }
                other => Err(Error::InvalidTree(format!("unexpected JSON node {other}"))),
            }
        }
        let (t, _) = dec(v, 0)?;
        t.validate()?;
        Ok(t)
    }
}

/// A planar tree together with a leaf labeling permutation: the pair `(T, σ)`
/// labels the stratum whose leaves read `σ(1), …, σ(n)` left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LabeledTree {
    pub tree: PlanarTree,
    pub perm: Permutation,
}

impl LabeledTree {
    pub fn new(tree: PlanarTree, perm: Permutation) -> Result<Self> {
        tree.validate()?;
        if tree.leaf_count() != perm.size() {
            return Err(Error::AmbientMismatch(tree.leaf_count(), perm.size()));
        }
        Ok(LabeledTree { tree, perm })
    }

    pub fn ambient(&self) -> usize {
        self.perm.size()
    }

    /// The reflection move `∇̃_v` at the non-root vertex with leaf span `v`:
    /// the collection is conjugated by `j_{T_v}` and the permutation picks up
    /// `ω_{T_v}` on the right. Applying it twice returns the input.
    pub fn nabla_tilde(&self, v: Interval) -> Result<LabeledTree> {
        let nested = self.tree.to_nested()?;
        if !nested.contains(&v) {
            return Err(Error::NoSuchVertex { lo: v.lo(), hi: v.hi() });
        }
        let new_tree = PlanarTree::from_nested(&nested.conjugated_by(&v));
        let omega = Permutation::reversal(v, self.ambient())?;
        Ok(LabeledTree {
            tree: new_tree,
            perm: self.perm.compose(&omega),
        })
    }

    /// Dyadic expansion: each leaf becomes a caret and the permutation is
    /// replaced by its expansion morphism image.
    pub fn expand(&self) -> LabeledTree {
        LabeledTree {
            tree: self.tree.expand(),
            perm: self.perm.expand(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn star_has_empty_collection() {
        assert!(PlanarTree::star(5).to_nested().unwrap().is_empty());
    }

    #[test]
    fn single_internal_vertex() {
        // Tree on 5 leaves with one vertex spanning leaves 2..4.
        let t = PlanarTree::Node(vec![
            PlanarTree::Leaf,
            PlanarTree::Node(vec![PlanarTree::Leaf, PlanarTree::Leaf, PlanarTree::Leaf]),
            PlanarTree::Leaf,
        ]);
        let c = t.to_nested().unwrap();
        assert_eq!(c.intervals(), &[iv(2, 4)]);
    }

    #[test]
    fn caret_of_carets() {
        let t = PlanarTree::Node(vec![PlanarTree::caret(), PlanarTree::caret()]);
        let c = t.to_nested().unwrap();
        assert_eq!(c.intervals(), &[iv(1, 2), iv(3, 4)]);
    }

    #[test]
    fn nested_round_trip_small() {
        for t in [
            PlanarTree::star(4),
            PlanarTree::Node(vec![PlanarTree::caret(), PlanarTree::caret()]),
            PlanarTree::Node(vec![
                PlanarTree::Leaf,
                PlanarTree::Node(vec![PlanarTree::Leaf, PlanarTree::caret()]),
            ]),
        ] {
            let c = t.to_nested().unwrap();
            assert_eq!(PlanarTree::from_nested(&c), t);
        }
    }

    #[test]
    fn figure_two_move() {
        // σ = id₆, 𝒯 = {[2,5],[2,3]}, move at v = [2,5]:
        // σ' = ω_{[2,5]} and 𝒯' = {[2,5],[4,5]}.
        let c = NestedCollection::new(6, vec![iv(2, 5), iv(2, 3)]).unwrap();
        let lt = LabeledTree::new(PlanarTree::from_nested(&c), Permutation::identity(6)).unwrap();
        let moved = lt.nabla_tilde(iv(2, 5)).unwrap();
        assert_eq!(moved.perm, Permutation::reversal(iv(2, 5), 6).unwrap());
        assert_eq!(
            moved.tree.to_nested().unwrap().intervals(),
            &[iv(2, 5), iv(4, 5)]
        );
        // Involutivity.
        assert_eq!(moved.nabla_tilde(iv(2, 5)).unwrap(), lt);
    }

    #[test]
    fn move_at_disjoint_vertex_only_changes_perm() {
        let c = NestedCollection::new(6, vec![iv(1, 2), iv(4, 6)]).unwrap();
        let lt = LabeledTree::new(PlanarTree::from_nested(&c), Permutation::identity(6)).unwrap();
        let moved = lt.nabla_tilde(iv(1, 2)).unwrap();
        assert_eq!(moved.tree, lt.tree);
        assert_ne!(moved.perm, lt.perm);
    }

    #[test]
    fn expand_tree_collection_is_carets_plus_doubled() {
        let c = NestedCollection::new(4, vec![iv(2, 4)]).unwrap();
        let t = PlanarTree::from_nested(&c);
        let expanded = t.expand().to_nested().unwrap();
        assert_eq!(
            expanded.intervals(),
            &[iv(1, 2), iv(3, 4), iv(3, 8), iv(5, 6), iv(7, 8)]
        );
    }

    #[test]
    fn expand_star3_is_tripod_of_carets() {
        let lt = LabeledTree::new(PlanarTree::star(3), Permutation::identity(3)).unwrap();
        let e = lt.expand();
        assert_eq!(e.perm, Permutation::identity(6));
        assert_eq!(
            e.tree,
            PlanarTree::Node(vec![PlanarTree::caret(), PlanarTree::caret(), PlanarTree::caret()])
        );
    }

    #[test]
    fn json_round_trip() {
        let t = PlanarTree::Node(vec![PlanarTree::caret(), PlanarTree::Leaf]);
        let v = t.to_json();
        assert_eq!(v, serde_json::json!([[1, 2], 3]));
        assert_eq!(PlanarTree::from_json(&v).unwrap(), t);
    }
}
