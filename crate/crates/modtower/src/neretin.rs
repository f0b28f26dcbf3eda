//! Spheromorphism symbols: exact arithmetic in Neretin's group `N`.
//!
//! A symbol is a tree pair with a leaf bijection and, at every source leaf, a
//! finite-state automorphism describing how the complete subtree hanging
//! there maps onto the one at the image leaf. Expansion splits a source leaf
//! and routes the two halves through the automaton's root swap bit — unlike
//! in `V`, the left half need not go left. Reduction merges caret pairs whose
//! leaves map to siblings (in either order); reduced trees, the leaf map and
//! behavioral equality of the automata decide equality in the group.

use serde::{Deserialize, Serialize};

use crate::automaton::AutomorphismAutomaton;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::thompson::{first_split, locate_leaf, path_to_leaf, BinaryTree, GroupClass, TreePairSymbol};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpheromorphismSymbol {
    pub target: BinaryTree,
    pub source: BinaryTree,
    /// Source leaf `i` maps to target leaf `leaf_map(i)`.
    pub leaf_map: Permutation,
    /// `automata[i-1]` maps the subtree below source leaf `i` onto the one
    /// below target leaf `leaf_map(i)`.
    pub automata: Vec<AutomorphismAutomaton>,
}

impl SpheromorphismSymbol {
    pub fn new(
        target: BinaryTree,
        source: BinaryTree,
        leaf_map: Permutation,
        automata: Vec<AutomorphismAutomaton>,
    ) -> Result<Self> {
        if target.leaf_count() != source.leaf_count()
            || source.leaf_count() != leaf_map.size()
            || automata.len() != leaf_map.size()
        {
            return Err(Error::InvalidSymbol(
                "leaf counts, permutation and automata sizes must agree".into(),
            ));
        }
        Ok(SpheromorphismSymbol {
            target,
            source,
            leaf_map,
            automata,
        })
    }

    pub fn identity() -> Self {
        SpheromorphismSymbol {
            target: BinaryTree::Leaf,
            source: BinaryTree::Leaf,
            leaf_map: Permutation::identity(1),
            automata: vec![AutomorphismAutomaton::identity()],
        }
    }

    pub fn from_v(s: &TreePairSymbol) -> Self {
        SpheromorphismSymbol {
            target: s.target.clone(),
            source: s.source.clone(),
            leaf_map: s.perm.clone(),
            automata: vec![AutomorphismAutomaton::identity(); s.leaf_count()],
        }
    }

    /// The one-leaf symbol of a global tree automorphism.
    pub fn from_automaton(a: AutomorphismAutomaton) -> Self {
        SpheromorphismSymbol {
            target: BinaryTree::Leaf,
            source: BinaryTree::Leaf,
            leaf_map: Permutation::identity(1),
            automata: vec![a],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_map.size()
    }

    /// Splits source leaf `i` and its image; the two halves are routed by the
    /// automaton's root swap bit and the automaton advances one step.
    pub fn expand(&self, i: usize) -> Result<SpheromorphismSymbol> {
        let n = self.leaf_count();
        if i == 0 || i > n {
            return Err(Error::LeafOutOfRange { index: i, count: n });
        }
        let q = &self.automata[i - 1];
        let crossed = q.initial_swap();
        let mut leaf_map = self.leaf_map.simple_expand_at_position(i)?;
        if crossed {
            let swap = Permutation::reversal(
                crate::interval::Interval::new(i, i + 1).expect("adjacent"),
                n + 1,
            )?;
            leaf_map = leaf_map.compose(&swap);
        }
        let mut automata = self.automata.clone();
        let (l, r) = (q.restrict(false), q.restrict(true));
        automata[i - 1] = l;
        automata.insert(i, r);
        Ok(SpheromorphismSymbol {
            target: self.target.expand_at(self.leaf_map.apply(i))?,
            source: self.source.expand_at(i)?,
            leaf_map,
            automata,
        })
    }

    /// Merges caret pairs whose leaves map to target siblings, straight or
    /// crossed, until none remain.
    pub fn reduce(&self) -> SpheromorphismSymbol {
        let mut s = self.clone();
        'outer: loop {
            let target_pairs = s.target.caret_pairs();
            for i in s.source.caret_pairs() {
                let (a, b) = (s.leaf_map.apply(i), s.leaf_map.apply(i + 1));
                let (t, crossed) = if b == a + 1 {
                    (a, false)
                } else if a == b + 1 {
                    (b, true)
                } else {
                    continue;
                };
                if !target_pairs.contains(&t) {
                    continue;
                }
                s = s.merge_pair(i, t, crossed);
                continue 'outer;
            }
            return s;
        }
    }

    fn merge_pair(&self, i: usize, t: usize, crossed: bool) -> SpheromorphismSymbol {
        let n = self.leaf_count();
        // Glue the two automata under a fresh root whose swap bit is the
        // crossing; successors are indexed by the input (source) letter.
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
        SpheromorphismSymbol {
            target: self.target.contract_at(t).expect("target caret"),
            source: self.source.contract_at(i).expect("source caret"),
            leaf_map: Permutation::new(images).expect("contracted bijection"),
            automata,
        }
    }

    pub fn expand_source_to(&self, tree: &BinaryTree) -> Result<SpheromorphismSymbol> {
        if !self.source.refines(tree) {
            return Err(Error::InvalidSymbol(
                "requested source is not a refinement".into(),
            ));
        }
        let mut s = self.clone();
        while s.source != *tree {
            let i = first_split(&s.source, tree).expect("strictly finer");
            s = s.expand(i)?;
        }
        Ok(s)
    }

    /// Expands until the target tree equals the given refinement.
    pub fn expand_target_to(&self, tree: &BinaryTree) -> Result<SpheromorphismSymbol> {
        if !self.target.refines(tree) {
            return Err(Error::InvalidSymbol(
                "requested target is not a refinement".into(),
            ));
        }
        let mut s = self.clone();
        while s.target != *tree {
            let j = first_split(&s.target, tree).expect("strictly finer");
            let i = s.leaf_map.inverse().apply(j);
            s = s.expand(i)?;
        }
        Ok(s)
    }

    /// Group product `self ∘ rhs` (rhs acts first).
    pub fn compose(&self, rhs: &SpheromorphismSymbol) -> SpheromorphismSymbol {
        self.compose_unreduced(rhs).reduce()
    }

    /// Product without the final reduction: needed when a word lift must stay
    /// in step with the symbol's leaf count.
    pub fn compose_unreduced(&self, rhs: &SpheromorphismSymbol) -> SpheromorphismSymbol {
        let middle = self.source.join(&rhs.target);
        let a = self
            .expand_source_to(&middle)
            .expect("join refines source");
        let b = rhs
            .expand_target_to(&middle)
            .expect("join refines target");
        let leaf_map = a.leaf_map.compose(&b.leaf_map);
        let automata = (1..=b.leaf_count())
            .map(|p| {
                let mid = b.leaf_map.apply(p);
                a.automata[mid - 1].compose(&b.automata[p - 1])
            })
            .collect();
        SpheromorphismSymbol {
            target: a.target,
            source: b.source,
            leaf_map,
            automata,
        }
    }

    pub fn inverse(&self) -> SpheromorphismSymbol {
        let inv_map = self.leaf_map.inverse();
        let automata = (1..=self.leaf_count())
            .map(|t| self.automata[inv_map.apply(t) - 1].inverse())
            .collect();
        SpheromorphismSymbol {
            target: self.source.clone(),
            source: self.target.clone(),
            leaf_map: inv_map,
            automata,
        }
    }

    /// Equality in the group: reduced trees and leaf map agree, and the
    /// automata agree behaviorally leaf by leaf.
    pub fn equal(&self, other: &SpheromorphismSymbol) -> bool {
        let (a, b) = (self.reduce(), other.reduce());
        a.source == b.source
            && a.target == b.target
            && a.leaf_map == b.leaf_map
            && a.automata
                .iter()
                .zip(&b.automata)
                .all(|(x, y)| x.equal(y))
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        r.source == BinaryTree::Leaf && r.target == BinaryTree::Leaf && r.automata[0].is_identity()
    }

    /// Partial action on binary words: route through the source tree, apply
    /// the leaf automaton to the remainder.
    pub fn act_on_word(&self, word: &[bool]) -> Option<Vec<bool>> {
        let (leaf, depth) = locate_leaf(&self.source, word)?;
        let mut out = path_to_leaf(&self.target, self.leaf_map.apply(leaf));
        out.extend(self.automata[leaf - 1].act_on_word(&word[depth..]));
        Some(out)
    }

    /// Classification within `F ⊂ V ⊂ N` (the rooted model has no `T`).
    /// A symbol lies in `V` exactly when all its automata are finitary, in
    /// which case expanding until they become trivial reads off `F` vs `V`.
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
        } else {
            GroupClass::V
        }
    }
}

impl PartialEq for SpheromorphismSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}
