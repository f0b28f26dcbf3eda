//! Tree-pair symbols: exact arithmetic in Thompson's groups `F ⊂ V`.
//!
//! An element of `V` is a class of symbols `(α₁, α₀, σ)` — two binary planar
//! trees with the same leaf count and a permutation sending source leaves to
//! target leaves — modulo simultaneous leaf expansion. Reduction removes
//! caret pairs whose leaves map in order, and the reduced symbol is the
//! unique normal form of the class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::PlanarTree;

/// A binary planar tree: every internal vertex has exactly two children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn caret() -> Self {
        BinaryTree::Node(Box::new(BinaryTree::Leaf), Box::new(BinaryTree::Leaf))
    }

    /// The complete tree of the given depth (`2^depth` leaves).
    pub fn complete(depth: usize) -> Self {
        if depth == 0 {
            BinaryTree::Leaf
        } else {
            let sub = BinaryTree::complete(depth - 1);
            BinaryTree::Node(Box::new(sub.clone()), Box::new(sub))
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Depth of each leaf, left to right.
    pub fn leaf_depths(&self) -> Vec<usize> {
        fn walk(t: &BinaryTree, d: usize, out: &mut Vec<usize>) {
            match t {
                BinaryTree::Leaf => out.push(d),
                BinaryTree::Node(l, r) => {
                    walk(l, d + 1, out);
                    walk(r, d + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replaces the `i`-th leaf (1-based) by a caret.
    pub fn expand_at(&self, i: usize) -> Result<BinaryTree> {
        fn insert(t: &BinaryTree, target: usize, offset: usize) -> (BinaryTree, usize) {
            match t {
                BinaryTree::Leaf => {
                    let pos = offset + 1;
                    if pos == target {
                        (BinaryTree::caret(), pos)
                    } else {
                        (BinaryTree::Leaf, pos)
                    }
                }
                BinaryTree::Node(l, r) => {
                    let (nl, p1) = insert(l, target, offset);
                    let (nr, p2) = insert(r, target, p1);
                    (BinaryTree::Node(Box::new(nl), Box::new(nr)), p2)
                }
            }
        }
        let n = self.leaf_count();
        if i == 0 || i > n {
            return Err(Error::LeafOutOfRange { index: i, count: n });
        }
        Ok(insert(self, i, 0).0)
    }

    /// Replaces the caret whose leaves are `i, i+1` by a single leaf.
    pub fn contract_at(&self, i: usize) -> Result<BinaryTree> {
        fn rec(t: &BinaryTree, target: usize, offset: usize) -> (BinaryTree, usize, bool) {
            match t {
                BinaryTree::Leaf => (BinaryTree::Leaf, offset + 1, false),
                BinaryTree::Node(l, r) => {
                    if matches!(**l, BinaryTree::Leaf)
                        && matches!(**r, BinaryTree::Leaf)
                        && offset + 1 == target
                    {
                        return (BinaryTree::Leaf, offset + 2, true);
                    }
                    let (nl, p1, d1) = rec(l, target, offset);
                    let (nr, p2, d2) = rec(r, target, p1);
                    (BinaryTree::Node(Box::new(nl), Box::new(nr)), p2, d1 || d2)
                }
            }
        }
        let (t, _, done) = rec(self, i, 0);
        if done {
            Ok(t)
        } else {
            Err(Error::InvalidSymbol(format!(
                "leaves {i},{} are not a caret",
                i + 1
            )))
        }
    }

    /// Leaf pairs `(i, i+1)` that are the two children of a caret.
    pub fn caret_pairs(&self) -> Vec<usize> {
        fn walk(t: &BinaryTree, offset: usize, out: &mut Vec<usize>) -> usize {
            match t {
                BinaryTree::Leaf => offset + 1,
                BinaryTree::Node(l, r) => {
                    if matches!(**l, BinaryTree::Leaf) && matches!(**r, BinaryTree::Leaf) {
                        out.push(offset + 1);
                        return offset + 2;
                    }
                    let p = walk(l, offset, out);
                    walk(r, p, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Smallest common refinement of two trees.
    pub fn join(&self, other: &BinaryTree) -> BinaryTree {
        match (self, other) {
            (BinaryTree::Leaf, t) => t.clone(),
            (t, BinaryTree::Leaf) => t.clone(),
            (BinaryTree::Node(a, b), BinaryTree::Node(c, d)) => {
                BinaryTree::Node(Box::new(a.join(c)), Box::new(b.join(d)))
            }
        }
    }

    /// True when `other` refines `self` (every leaf of self is a subtree root
    /// of other).
    pub fn refines(&self, finer: &BinaryTree) -> bool {
        self.join(finer) == *finer
    }

    pub fn to_planar(&self) -> PlanarTree {
        match self {
            BinaryTree::Leaf => PlanarTree::Leaf,
            BinaryTree::Node(l, r) => PlanarTree::Node(vec![l.to_planar(), r.to_planar()]),
        }
    }

    pub fn from_planar(t: &PlanarTree) -> Result<BinaryTree> {
        match t {
            PlanarTree::Leaf => Ok(BinaryTree::Leaf),
            PlanarTree::Node(children) => {
                if children.len() != 2 {
                    return Err(Error::InvalidTree("not a binary tree".into()));
                }
                Ok(BinaryTree::Node(
                    Box::new(BinaryTree::from_planar(&children[0])?),
                    Box::new(BinaryTree::from_planar(&children[1])?),
                ))
            }
        }
    }
}

impl Permutation {
    /// Removes the straight pair `(i, i+1) ↦ (σ(i), σ(i)+1)`, the inverse of
    /// [`Permutation::simple_expand_at_position`].
    pub fn contract_pair(&self, i: usize) -> Result<Permutation> {
        let n = self.size();
        if i + 1 > n || self.apply(i + 1) != self.apply(i) + 1 {
            return Err(Error::InvalidSymbol(format!(
                "positions {i},{} do not map to an adjacent pair in order",
                i + 1
            )));
        }
        let t = self.apply(i);
        let mut images = Vec::with_capacity(n - 1);
        for p in 1..=n {
            if p == i + 1 {
                continue;
            }
            let v = self.apply(p);
            images.push(if v > t { v - 1 } else { v });
        }
        Permutation::new(images)
    }
}

/// A symbol `(target, source, perm)`: source leaf `i` maps to target leaf
/// `perm(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TreePairSymbol {
    pub target: BinaryTree,
    pub source: BinaryTree,
    pub perm: Permutation,
}

impl TreePairSymbol {
    pub fn new(target: BinaryTree, source: BinaryTree, perm: Permutation) -> Result<Self> {
        if target.leaf_count() != source.leaf_count() || source.leaf_count() != perm.size() {
            return Err(Error::InvalidSymbol(
                "leaf counts and permutation size must agree".into(),
            ));
        }
        Ok(TreePairSymbol {
            target,
            source,
            perm,
        })
    }

    pub fn identity(tree: BinaryTree) -> Self {
        let n = tree.leaf_count();
        TreePairSymbol {
            target: tree.clone(),
            source: tree,
            perm: Permutation::identity(n),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.perm.size()
    }

    /// Expands source leaf `i` and target leaf `perm(i)` by carets, pairing
    /// left with left and right with right.
    pub fn expand(&self, i: usize) -> Result<TreePairSymbol> {
        let n = self.leaf_count();
        if i == 0 || i > n {
            return Err(Error::LeafOutOfRange { index: i, count: n });
        }
        Ok(TreePairSymbol {
            target: self.target.expand_at(self.perm.apply(i))?,
            source: self.source.expand_at(i)?,
            perm: self.perm.simple_expand_at_position(i)?,
        })
    }

    /// Expands every leaf once: the dyadic expansion
    /// `(exp(α₁), exp(α₀), exp(σ))`.
    pub fn expand_all(&self) -> TreePairSymbol {
        let mut s = self.clone();
        // expand original leaves right-to-left so positions stay valid
        for i in (1..=self.leaf_count()).rev() {
            s = s.expand(i).expect("leaf in range");
        }
        s
    }

    /// Unique normal form: repeatedly removes caret pairs mapped in order.
    pub fn reduce(&self) -> TreePairSymbol {
        let mut s = self.clone();
        'outer: loop {
            for i in s.source.caret_pairs() {
                if s.perm.apply(i + 1) != s.perm.apply(i) + 1 {
                    continue;
                }
                let t = s.perm.apply(i);
                if !s.target.caret_pairs().contains(&t) {
                    continue;
                }
                s = TreePairSymbol {
                    target: s.target.contract_at(t).expect("target caret"),
                    source: s.source.contract_at(i).expect("source caret"),
                    perm: s.perm.contract_pair(i).expect("straight pair"),
                };
                continue 'outer;
            }
            return s;
        }
    }

    pub fn is_reduced(&self) -> bool {
        *self == self.reduce()
    }

    /// Expands the symbol until its source tree equals `tree` (which must
    /// refine the current source).
    pub fn expand_source_to(&self, tree: &BinaryTree) -> Result<TreePairSymbol> {
        if !self.source.refines(tree) {
            return Err(Error::InvalidSymbol(
                "requested source is not a refinement".into(),
            ));
        }
        let mut s = self.clone();
        while s.source != *tree {
            // find the first source leaf where the refinement has a caret
            let i = first_split(&s.source, tree).expect("refinement strictly finer");
            s = s.expand(i)?;
        }
        Ok(s)
    }

    /// Group product: `self ∘ rhs` (rhs acts first).
    pub fn compose(&self, rhs: &TreePairSymbol) -> TreePairSymbol {
        let middle = self.source.join(&rhs.target);
        let a = self
            .expand_source_to(&middle)
            .expect("join refines the source");
        let mut b = rhs.clone();
        while b.target != middle {
            let j = first_split(&b.target, &middle).expect("join refines the target");
            let i = b.perm.inverse().apply(j);
            b = b.expand(i).expect("leaf in range");
        }
        TreePairSymbol {
            target: a.target,
            source: b.source,
            perm: a.perm.compose(&b.perm),
        }
        .reduce()
    }

    pub fn inverse(&self) -> TreePairSymbol {
        TreePairSymbol {
            target: self.source.clone(),
            source: self.target.clone(),
            perm: self.perm.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.source == r.target && r.perm.is_identity() && r.source == BinaryTree::Leaf
    }

    /// Faithful partial action on binary words (boundary points): routes the
    /// word through the source tree and out of the target. `None` when the
    /// word is too short to reach a source leaf.
    pub fn act_on_word(&self, word: &[bool]) -> Option<Vec<bool>> {
        let (leaf, depth) = locate_leaf(&self.source, word)?;
        let mut out = path_to_leaf(&self.target, self.perm.apply(leaf));
        out.extend_from_slice(&word[depth..]);
        Some(out)
    }
}

/// First leaf position of `coarse` at which `fine` has an internal vertex.
pub(crate) fn first_split(coarse: &BinaryTree, fine: &BinaryTree) -> Option<usize> {
    fn walk(c: &BinaryTree, f: &BinaryTree, offset: usize) -> (Option<usize>, usize) {
        match (c, f) {
            (BinaryTree::Leaf, BinaryTree::Leaf) => (None, offset + 1),
            (BinaryTree::Leaf, BinaryTree::Node(..)) => (Some(offset + 1), offset + 1),
            (BinaryTree::Node(a, b), BinaryTree::Node(x, y)) => {
                let (hit, p) = walk(a, x, offset);
                if hit.is_some() {
                    return (hit, p);
                }
                walk(b, y, p)
            }
            (BinaryTree::Node(..), BinaryTree::Leaf) => unreachable!("fine must refine coarse"),
        }
    }
    walk(coarse, fine, 0).0
}

/// Leaf index reached by reading `word` from the root, with the number of
/// letters consumed.
pub(crate) fn locate_leaf(tree: &BinaryTree, word: &[bool]) -> Option<(usize, usize)> {
    let mut t = tree;
    let mut offset = 0usize;
    let mut used = 0usize;
    loop {
        match t {
            BinaryTree::Leaf => return Some((offset + 1, used)),
            BinaryTree::Node(l, r) => {
                let &b = word.get(used)?;
                if b {
                    offset += l.leaf_count();
                    t = r;
                } else {
                    t = l;
                }
                used += 1;
            }
        }
    }
}

/// Root-to-leaf path of the `i`-th leaf.
pub(crate) fn path_to_leaf(tree: &BinaryTree, i: usize) -> Vec<bool> {
    let mut t = tree;
    let mut lo = 1usize;
    let mut path = Vec::new();
    loop {
        match t {
            BinaryTree::Leaf => return path,
            BinaryTree::Node(l, r) => {
                let nl = l.leaf_count();
                if i < lo + nl {
                    path.push(false);
                    t = l;
                } else {
                    path.push(true);
                    lo += nl;
                    t = r;
                }
            }
        }
    }
}

/// Classification of a symbol inside the chain `F ⊂ T ⊂ V ⊂ N`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupClass {
    F,
    T,
    V,
    NOnly,
}

/// Membership for rooted tree-pair symbols: `F` iff the reduced permutation
/// is the identity; `T` needs the cyclic model.
pub fn membership_v(s: &TreePairSymbol) -> GroupClass {
    if s.reduce().perm.is_identity() {
        GroupClass::F
    } else {
        GroupClass::V
    }
}

/// The translation along the leftmost spine, as an element of `F`:
/// `0w ↦ 00w`, `10w ↦ 01w`, `11w ↦ 1w`.
pub fn spine_translation() -> TreePairSymbol {
    let source = BinaryTree::Node(Box::new(BinaryTree::Leaf), Box::new(BinaryTree::caret()));
    let target = BinaryTree::Node(Box::new(BinaryTree::caret()), Box::new(BinaryTree::Leaf));
    TreePairSymbol::new(target, source, Permutation::identity(3)).expect("valid symbol")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn expanding_identity_keeps_identity() {
        let e = TreePairSymbol::identity(BinaryTree::caret());
        let x = e.expand(1).unwrap();
        assert_eq!(x.source, x.target);
        assert!(x.perm.is_identity());
        assert!(x.reduce().is_identity());
    }

    #[test]
    fn expand_all_is_dyadic_expansion() {
        let s = TreePairSymbol::new(
            BinaryTree::caret(),
            BinaryTree::caret(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let e = s.expand_all();
        assert_eq!(e.perm, s.perm.expand());
        assert_eq!(e.source, BinaryTree::complete(2));
    }

    #[test]
    fn double_expansion_order_independent() {
        let s = TreePairSymbol::identity(BinaryTree::caret());
        let a = s.expand(1).unwrap().expand(3).unwrap();
        let b = s.expand(2).unwrap().expand(1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_inverts_expansion() {
        let s = TreePairSymbol::new(
            BinaryTree::Node(Box::new(BinaryTree::caret()), Box::new(BinaryTree::Leaf)),
            BinaryTree::Node(Box::new(BinaryTree::Leaf), Box::new(BinaryTree::caret())),
            Permutation::new(vec![3, 1, 2]).unwrap(),
        )
        .unwrap();
        for i in 1..=3 {
            assert_eq!(s.expand(i).unwrap().reduce(), s.reduce());
        }
    }

    #[test]
    fn identity_symbols_reduce_to_leaf() {
        for tree in [
            BinaryTree::caret(),
            BinaryTree::complete(3),
            BinaryTree::Node(Box::new(BinaryTree::Leaf), Box::new(BinaryTree::caret())),
        ] {
            let r = TreePairSymbol::identity(tree).reduce();
            assert_eq!(r.source, BinaryTree::Leaf);
            assert_eq!(r.target, BinaryTree::Leaf);
        }
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let s = TreePairSymbol::new(
            BinaryTree::Node(Box::new(BinaryTree::caret()), Box::new(BinaryTree::Leaf)),
            BinaryTree::Node(Box::new(BinaryTree::Leaf), Box::new(BinaryTree::caret())),
            Permutation::new(vec![2, 3, 1]).unwrap(),
        )
        .unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
    }

    #[test]
    fn identity_laws() {
        let s = TreePairSymbol::new(
            BinaryTree::caret(),
            BinaryTree::caret(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let e = TreePairSymbol::identity(BinaryTree::complete(2));
        assert_eq!(s.compose(&e), s.reduce());
        assert_eq!(e.compose(&s), s.reduce());
    }

    #[test]
    fn membership_examples() {
        let e = TreePairSymbol::identity(BinaryTree::caret());
        assert_eq!(membership_v(&e), GroupClass::F);
        let x0 = spine_translation();
        assert_eq!(membership_v(&x0), GroupClass::F);
        let v = TreePairSymbol::new(
            BinaryTree::caret(),
            BinaryTree::caret(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(membership_v(&v), GroupClass::V);
    }

    #[test]
    fn translation_boundary_action() {
        let d = spine_translation();
        assert_eq!(d.act_on_word(&bits("0110")).unwrap(), bits("00110"));
        assert_eq!(d.act_on_word(&bits("101")).unwrap(), bits("011"));
        assert_eq!(d.act_on_word(&bits("1101")).unwrap(), bits("101"));
    }

    #[test]
    fn word_action_is_functorial() {
        let a = spine_translation();
        let b = TreePairSymbol::new(
            BinaryTree::caret(),
            BinaryTree::caret(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let ab = a.compose(&b);
        for w in ["0000", "0101", "1100", "1010"] {
            let w = bits(w);
            assert_eq!(
                ab.act_on_word(&w).unwrap(),
                a.act_on_word(&b.act_on_word(&w).unwrap()).unwrap()
            );
        }
    }
}
