//! Deterministic random generators for the randomized test suites.
//!
//! Everything is driven by a seeded ChaCha stream so that test runs and the
//! command-line verification suite are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{AState, AutomorphismAutomaton};
use crate::cyclic::CyclicSymbol;
use crate::interval::{Interval, NestedCollection};
use crate::neretin::SpheromorphismSymbol;
use crate::perm::Permutation;
use crate::quasibraid::{section_word, QBWord};
use crate::strata::StratumClass;
use crate::thompson::{BinaryTree, TreePairSymbol};
use crate::tower::TowerCell;
use crate::tree::PlanarTree;
use crate::unrooted::UnrootedLabeledTree;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn binary_tree(&mut self, leaves: usize) -> BinaryTree {
        if leaves == 1 {
            return BinaryTree::Leaf;
        }
        let left = self.rng.gen_range(1..leaves);
        BinaryTree::Node(
            Box::new(self.binary_tree(left)),
            Box::new(self.binary_tree(leaves - left)),
        )
    }

    pub fn perm(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let j = self.rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Permutation::new(images).expect("shuffled bijection")
    }

    pub fn v_symbol(&mut self, leaves: usize) -> TreePairSymbol {
        TreePairSymbol::new(
            self.binary_tree(leaves),
            self.binary_tree(leaves),
            self.perm(leaves),
        )
        .expect("consistent sizes")
    }

    /// A valid automaton with at most `max_states` states.
    pub fn automaton(&mut self, max_states: usize) -> AutomorphismAutomaton {
        let n = self.rng.gen_range(1..=max_states);
        let states = (0..n)
            .map(|_| AState {
                swap: self.rng.gen(),
                left: self.rng.gen_range(0..n),
                right: self.rng.gen_range(0..n),
            })
            .collect();
        AutomorphismAutomaton::new(states, 0).expect("valid by construction")
    }

    pub fn n_symbol(&mut self, leaves: usize, max_states: usize) -> SpheromorphismSymbol {
        SpheromorphismSymbol::new(
            self.binary_tree(leaves),
            self.binary_tree(leaves),
            self.perm(leaves),
            (0..leaves).map(|_| self.automaton(max_states)).collect(),
        )
        .expect("consistent sizes")
    }

    pub fn cyclic_symbol(&mut self, branch_leaves: usize, max_states: usize) -> CyclicSymbol {
        let n = 3 * branch_leaves;
        CyclicSymbol::new(
            std::array::from_fn(|_| self.binary_tree(branch_leaves)),
            std::array::from_fn(|_| self.binary_tree(branch_leaves)),
            self.perm(n),
            (0..n).map(|_| self.automaton(max_states)).collect(),
        )
        .expect("consistent sizes")
    }

    pub fn qb_word(&mut self, n: usize, len: usize) -> QBWord {
        let factors = (0..len)
            .map(|_| {
                let lo = self.rng.gen_range(1..n);
                let hi = self.rng.gen_range(lo + 1..=n);
                Interval::new(lo, hi).expect("lo < hi")
            })
            .collect();
        QBWord::new(n, factors).expect("factors fit")
    }

    /// A pure word: a random word times the canonical section of its inverse
    /// projection.
    pub fn pure_word(&mut self, n: usize, len: usize) -> QBWord {
        let w = self.qb_word(n, len);
        let fix = section_word(&w.phi().inverse());
        w.concat(&fix).expect("same ambient")
    }

    pub fn nested_collection(&mut self, n: usize, tries: usize) -> NestedCollection {
        let mut coll = NestedCollection::empty(n);
        for _ in 0..tries {
            let lo = self.rng.gen_range(1..n);
            let hi = self.rng.gen_range(lo + 1..=n);
            if let Ok(iv) = Interval::new(lo, hi) {
                if iv.is_proper(n) {
                    if let Ok(next) = coll.with_inserted(iv) {
                        coll = next;
                    }
                }
            }
        }
        coll
    }

    pub fn stratum(&mut self, n: usize) -> StratumClass {
        let coll = self.nested_collection(n, n / 2);
        StratumClass::new(coll, self.perm(n)).expect("valid class")
    }

    pub fn tilde_cell(&mut self, level: usize) -> TowerCell {
        TowerCell::tilde(level, self.stratum(1 << level)).expect("level matches")
    }

    pub fn bar_cell(&mut self, level: usize) -> TowerCell {
        let n = 3 * (1 << level) - 1;
        let coll = self.nested_collection(n, n / 3);
        let tree = PlanarTree::from_nested(&coll);
        let cell = UnrootedLabeledTree::new(tree, self.perm(n)).expect("valid tree");
        TowerCell::bar(level, cell).expect("level matches")
    }

    /// A cyclic-tower cell inside the distinguished associahedron.
    pub fn bar_cell_in_k_infinity(&mut self, level: usize) -> TowerCell {
        let n = 3 * (1 << level) - 1;
        let coll = self.nested_collection(n, n / 3);
        let tree = PlanarTree::from_nested(&coll);
        let cell = UnrootedLabeledTree::new(tree, Permutation::identity(n)).expect("valid tree");
        TowerCell::bar(level, cell).expect("level matches")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        assert_eq!(a.perm(6), b.perm(6));
        assert_eq!(a.binary_tree(5), b.binary_tree(5));
        assert_eq!(a.qb_word(5, 4), b.qb_word(5, 4));
    }

    #[test]
    fn pure_words_are_pure() {
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            assert!(s.pure_word(6, 5).is_pure());
        }
    }
}
