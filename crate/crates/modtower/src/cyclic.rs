//! Cyclic symbols: the unrooted variant of the tree-pair calculus.
//!
//! Trees are unrooted with a marked vertex of valence three (the center of
//! the reference tree whose arms are complete dyadic branches); we store the
//! three branches in counterclockwise order. Leaf positions run through
//! branch 0, then 1, then 2. Rotations live explicitly in the leaf map, never
//! in the embedding, so equality is branchwise.
//!
//! Thompson's group `T` sits inside as the symbols whose reduced leaf map is
//! a rotation with trivial automata.

use serde::{Deserialize, Serialize};

use crate::automaton::AutomorphismAutomaton;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::Permutation;
use crate::thompson::{first_split, BinaryTree, GroupClass, TreePairSymbol};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicSymbol {
    pub target: [BinaryTree; 3],
    pub source: [BinaryTree; 3],
    /// Source position → target position across all leaves.
    pub leaf_map: Permutation,
    pub automata: Vec<AutomorphismAutomaton>,
}

fn total_leaves(branches: &[BinaryTree; 3]) -> usize {
    branches.iter().map(|b| b.leaf_count()).sum()
}

/// (branch index, local leaf index) of a global position.
fn branch_of(branches: &[BinaryTree; 3], pos: usize) -> (usize, usize) {
    let mut p = pos;
    for (b, tree) in branches.iter().enumerate() {
        let k = tree.leaf_count();
        if p <= k {
            return (b, p);
        }
        p -= k;
    }
    panic!("position {pos} out of range");
}

fn branch_offset(branches: &[BinaryTree; 3], b: usize) -> usize {
    branches[..b].iter().map(|t| t.leaf_count()).sum()
}

impl CyclicSymbol {
    pub fn new(
        target: [BinaryTree; 3],
        source: [BinaryTree; 3],
        leaf_map: Permutation,
        automata: Vec<AutomorphismAutomaton>,
    ) -> Result<Self> {
        if total_leaves(&target) != total_leaves(&source)
            || total_leaves(&source) != leaf_map.size()
            || automata.len() != leaf_map.size()
        {
            return Err(Error::InvalidSymbol(
                "branch leaf counts, permutation and automata must agree".into(),
            ));
        }
        Ok(CyclicSymbol {
            target,
            source,
            leaf_map,
            automata,
        })
    }

    pub fn identity() -> Self {
        CyclicSymbol {
            target: [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            source: [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            leaf_map: Permutation::identity(3),
            automata: vec![AutomorphismAutomaton::identity(); 3],
        }
    }

    /// Rotation by `r` positions at branch depth `level` (an element of `T`).
    pub fn rotation(level: usize, r: usize) -> Self {
        let branch = BinaryTree::complete(level);
        let n = 3 * branch.leaf_count();
        let images: Vec<usize> = (1..=n).map(|i| (i - 1 + r) % n + 1).collect();
        CyclicSymbol {
            target: [branch.clone(), branch.clone(), branch.clone()],
            source: [branch.clone(), branch.clone(), branch],
            leaf_map: Permutation::new(images).expect("rotation"),
            automata: vec![AutomorphismAutomaton::identity(); n],
        }
    }

    /// The plane reflection fixing branch 0: cyclic order reversed, every
    /// branch mirrored. An involution inducing the full reversal on each
    /// reference level up to rotation.
    pub fn inv_reflection() -> Self {
        CyclicSymbol {
            target: [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            source: [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            leaf_map: Permutation::new(vec![1, 3, 2]).expect("reflection"),
            automata: vec![AutomorphismAutomaton::mirror(); 3],
        }
    }

    /// Grafts a rooted symbol onto branch 0 of the marked vertex; the other
    /// two branches are untouched arms.
    pub fn from_rooted(s: &crate::neretin::SpheromorphismSymbol) -> Self {
        let k = s.leaf_count();
        let mut images: Vec<usize> = (1..=k).map(|i| s.leaf_map.apply(i)).collect();
        images.push(k + 1);
        images.push(k + 2);
        let mut automata = s.automata.clone();
        automata.push(AutomorphismAutomaton::identity());
        automata.push(AutomorphismAutomaton::identity());
        CyclicSymbol {
            target: [s.target.clone(), BinaryTree::Leaf, BinaryTree::Leaf],
            source: [s.source.clone(), BinaryTree::Leaf, BinaryTree::Leaf],
            leaf_map: Permutation::new(images).expect("extended bijection"),
            automata,
        }
    }

    pub fn from_v_rooted(s: &TreePairSymbol) -> Self {
        CyclicSymbol::from_rooted(&crate::neretin::SpheromorphismSymbol::from_v(s))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_map.size()
    }

    pub fn expand(&self, i: usize) -> Result<CyclicSymbol> {
        let n = self.leaf_count();
        if i == 0 || i > n {
            return Err(Error::LeafOutOfRange { index: i, count: n });
        }
        let q = &self.automata[i - 1];
        let crossed = q.initial_swap();
        let mut leaf_map = self.leaf_map.simple_expand_at_position(i)?;
        if crossed {
            let swap = Permutation::reversal(Interval::new(i, i + 1)?, n + 1)?;
            leaf_map = leaf_map.compose(&swap);
        }
        let mut automata = self.automata.clone();
        automata[i - 1] = q.restrict(false);
        automata.insert(i, q.restrict(true));

        let t = self.leaf_map.apply(i);
        let (sb, sl) = branch_of(&self.source, i);
        let (tb, tl) = branch_of(&self.target, t);
        let mut source = self.source.clone();
        let mut target = self.target.clone();
        source[sb] = source[sb].expand_at(sl)?;
        target[tb] = target[tb].expand_at(tl)?;
        CyclicSymbol::new(target, source, leaf_map, automata)
    }

    pub fn reduce(&self) -> CyclicSymbol {
        let mut s = self.clone();
        'outer: loop {
            let target_pairs: Vec<usize> = (0..3)
                .flat_map(|b| {
                    let off = branch_offset(&s.target, b);
                    s.target[b].caret_pairs().into_iter().map(move |p| p + off)
                })
                .collect();
            for b in 0..3 {
                let off = branch_offset(&s.source, b);
                for local in s.source[b].caret_pairs() {
                    let i = local + off;
                    let (x, y) = (s.leaf_map.apply(i), s.leaf_map.apply(i + 1));
                    let (t, crossed) = if y == x + 1 {
                        (x, false)
                    } else if x == y + 1 {
                        (y, true)
                    } else {
                        continue;
                    };
                    if !target_pairs.contains(&t) {
                        continue;
                    }
                    s = s.merge_pair(i, t, crossed);
                    continue 'outer;
                }
            }
            return s;
        }
    }

    fn merge_pair(&self, i: usize, t: usize, crossed: bool) -> CyclicSymbol {
        let n = self.leaf_count();
        let left = self.automata[i - 1].clone();
        let right = self.automata[i].clone();
        let offset_l = 1usize;
        let offset_r = 1 + left.states.len();
        let mut states = vec![crate::automaton::AState {
            swap: crossed,
            left: offset_l + left.initial,
            right: offset_r + right.initial,
        }];
        states.extend(left.states.iter().map(|s| crate::automaton::AState {
            swap: s.swap,
            left: offset_l + s.left,
            right: offset_l + s.right,
        }));
        states.extend(right.states.iter().map(|s| crate::automaton::AState {
            swap: s.swap,
            left: offset_r + s.left,
            right: offset_r + s.right,
        }));
        let merged = AutomorphismAutomaton { states, initial: 0 }.minimize();

        let mut images = Vec::with_capacity(n - 1);
        for p in 1..=n {
            if p == i + 1 {
                continue;
            }
            let v = if p == i { t } else { self.leaf_map.apply(p) };
            images.push(if v > t + 1 { v - 1 } else { v });
        }
        let mut automata = self.automata.clone();
        automata.remove(i);
        automata[i - 1] = merged;

        let (sb, sl) = branch_of(&self.source, i);
        let (tb, tl) = branch_of(&self.target, t);
        let mut source = self.source.clone();
        let mut target = self.target.clone();
        source[sb] = source[sb].contract_at(sl).expect("source caret");
        target[tb] = target[tb].contract_at(tl).expect("target caret");
        CyclicSymbol {
            target,
            source,
            leaf_map: Permutation::new(images).expect("contracted bijection"),
            automata,
        }
    }

    /// Expands until the source branches equal the given refinement.
    pub fn expand_source_to(&self, branches: &[BinaryTree; 3]) -> Result<CyclicSymbol> {
        let mut s = self.clone();
        for b in 0..3 {
            if !s.source[b].refines(&branches[b]) {
                return Err(Error::InvalidSymbol(
                    "requested source is not a refinement".into(),
                ));
            }
        }
        loop {
            let mut split = None;
            for b in 0..3 {
                if let Some(local) = first_split(&s.source[b], &branches[b]) {
                    split = Some(branch_offset(&s.source, b) + local);
                    break;
                }
            }
            match split {
                Some(i) => s = s.expand(i)?,
                None => return Ok(s),
            }
        }
    }

    /// Group product `self ∘ rhs` (rhs acts first).
    pub fn compose(&self, rhs: &CyclicSymbol) -> CyclicSymbol {
        let middle: [BinaryTree; 3] = std::array::from_fn(|b| self.source[b].join(&rhs.target[b]));
        let a = self.expand_source_to(&middle).expect("join refines source");
        let mut b = rhs.clone();
        loop {
            let mut split = None;
            for br in 0..3 {
                if let Some(local) = first_split(&b.target[br], &middle[br]) {
                    split = Some(branch_offset(&b.target, br) + local);
                    break;
                }
            }
            match split {
                Some(j) => {
                    let i = b.leaf_map.inverse().apply(j);
                    b = b.expand(i).expect("leaf in range");
                }
                None => break,
            }
        }
        let leaf_map = a.leaf_map.compose(&b.leaf_map);
        let automata = (1..=b.leaf_count())
            .map(|p| {
                let mid = b.leaf_map.apply(p);
                a.automata[mid - 1].compose(&b.automata[p - 1])
            })
            .collect();
        CyclicSymbol {
            target: a.target,
            source: b.source,
            leaf_map,
            automata,
        }
        .reduce()
    }

    pub fn inverse(&self) -> CyclicSymbol {
        let inv_map = self.leaf_map.inverse();
        let automata = (1..=self.leaf_count())
            .map(|t| self.automata[inv_map.apply(t) - 1].inverse())
            .collect();
        CyclicSymbol {
            target: self.source.clone(),
            source: self.target.clone(),
            leaf_map: inv_map,
            automata,
        }
    }

    pub fn equal(&self, other: &CyclicSymbol) -> bool {
        let (a, b) = (self.reduce(), other.reduce());
        a.source == b.source
            && a.target == b.target
            && a.leaf_map == b.leaf_map
            && a.automata.iter().zip(&b.automata).all(|(x, y)| x.equal(y))
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.source.iter().all(|t| *t == BinaryTree::Leaf)
            && r.target.iter().all(|t| *t == BinaryTree::Leaf)
            && r.leaf_map.is_identity()
            && r.automata.iter().all(|a| a.is_identity())
    }

    /// Classification in the cyclic chain `F ⊂ T ⊂ V ⊂ N`.
    pub fn membership(&self) -> GroupClass {
        let mut s = self.reduce();
        if s.automata.iter().any(|a| !a.is_finitary()) {
            return GroupClass::NOnly;
        }
        loop {
            match (1..=s.leaf_count()).find(|&i| !s.automata[i - 1].is_identity()) {
                None => break,
                Some(i) => s = s.expand(i).expect("leaf in range"),
            }
        }
        if s.leaf_map.is_identity() {
            GroupClass::F
        } else if s.leaf_map.is_rotation() {
            GroupClass::T
        } else {
            GroupClass::V
        }
    }
}

impl PartialEq for CyclicSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_grafts_to_identity() {
        let e = crate::neretin::SpheromorphismSymbol::identity();
        assert!(CyclicSymbol::from_rooted(&e).is_identity());
    }

    #[test]
    fn graft_preserves_composition() {
        let v = TreePairSymbol::new(
            BinaryTree::caret(),
            BinaryTree::caret(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let x0 = crate::thompson::spine_translation();
        let lhs = CyclicSymbol::from_v_rooted(&v).compose(&CyclicSymbol::from_v_rooted(&x0));
        let rhs = CyclicSymbol::from_v_rooted(&v.compose(&x0));
        assert!(lhs.equal(&rhs));
    }

    #[test]
    fn rotations_compose_additively() {
        let a = CyclicSymbol::rotation(1, 1);
        let b = CyclicSymbol::rotation(1, 2);
        assert!(a.compose(&b).equal(&CyclicSymbol::rotation(1, 3)));
        let full = CyclicSymbol::rotation(1, 6);
        assert!(full.is_identity());
    }

    #[test]
    fn rotation_membership_is_t() {
        assert_eq!(CyclicSymbol::rotation(1, 1).membership(), GroupClass::T);
        assert_eq!(CyclicSymbol::rotation(0, 0).membership(), GroupClass::F);
        let refl = CyclicSymbol::new(
            [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            [BinaryTree::Leaf, BinaryTree::Leaf, BinaryTree::Leaf],
            Permutation::new(vec![1, 3, 2]).unwrap(),
            vec![AutomorphismAutomaton::identity(); 3],
        )
        .unwrap();
        assert_eq!(refl.membership(), GroupClass::V);
        assert_eq!(
            CyclicSymbol::inv_reflection().membership(),
            GroupClass::NOnly
        );
    }

    #[test]
    fn inv_reflection_is_an_involution() {
        let inv = CyclicSymbol::inv_reflection();
        assert!(inv.compose(&inv).is_identity());
    }

    #[test]
    fn rotation_reduces_to_minimal_level() {
        // An even rotation at level 1 merges down to a branch shift.
        let r2 = CyclicSymbol::rotation(1, 2).reduce();
        assert_eq!(r2.leaf_count(), 3);
        assert_eq!(r2.leaf_map.images(), &[2, 3, 1]);
    }

    #[test]
    fn inverse_cancels() {
        for g in [
            CyclicSymbol::rotation(1, 1),
            CyclicSymbol::inv_reflection(),
            CyclicSymbol::from_v_rooted(&crate::thompson::spine_translation()),
        ] {
            assert!(g.compose(&g.inverse()).is_identity());
        }
    }
}
