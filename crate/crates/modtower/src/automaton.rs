//! Finite-state automorphisms of the complete rooted binary tree.
//!
//! An automorphism is determined by its portrait: one swap bit per tree node.
//! We restrict to portraits realized by a finite-state machine — a state per
//! node, each state carrying its swap bit and the states of the two children.
//! This subclass is closed under composition, inverse and restriction, has
//! decidable equality, and contains everything the constructions here need
//! (all finitary automorphisms, the mirror, spine swaps).
//!
//! Reading a word `b₁b₂…` from the root, the output letter at a node is the
//! input letter XORed with the node's swap bit, and the machine descends into
//! the child selected by the *input* letter.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AState {
    pub swap: bool,
    /// Successor for input letter 0 (left child).
    pub left: usize,
    /// Successor for input letter 1 (right child).
    pub right: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AutomorphismAutomaton {
    pub states: Vec<AState>,
    pub initial: usize,
}

impl AutomorphismAutomaton {
    pub fn new(states: Vec<AState>, initial: usize) -> Result<Self> {
        if initial >= states.len() {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        for s in &states {
            if s.left >= states.len() || s.right >= states.len() {
                return Err(Error::InvalidAutomaton("successor out of range".into()));
            }
        }
        Ok(AutomorphismAutomaton { states, initial })
    }

    /// The identity automorphism.
    pub fn identity() -> Self {
        AutomorphismAutomaton {
            states: vec![AState {
                swap: false,
                left: 0,
                right: 0,
            }],
            initial: 0,
        }
    }

    /// Swaps the two subtrees at the root only.
    pub fn root_swap() -> Self {
        AutomorphismAutomaton {
            states: vec![
                AState {
                    swap: true,
                    left: 1,
                    right: 1,
                },
                AState {
                    swap: false,
                    left: 1,
                    right: 1,
                },
            ],
            initial: 0,
        }
    }

    /// The full mirror: swaps at every node.
    pub fn mirror() -> Self {
        AutomorphismAutomaton {
            states: vec![AState {
                swap: true,
                left: 0,
                right: 0,
            }],
            initial: 0,
        }
    }

    /// Swaps at the leftmost-spine nodes `0^k` for every `k ≥ start_depth`.
    pub fn spine_swap(start_depth: usize) -> Self {
        let mut states = Vec::new();
        let spine = start_depth;
        let sink = start_depth + 1;
        for k in 0..start_depth {
            states.push(AState {
                swap: false,
                left: k + 1,
                right: sink,
            });
        }
        states.push(AState {
            swap: true,
            left: spine,
            right: sink,
        });
        states.push(AState {
            swap: false,
            left: sink,
            right: sink,
        });
        AutomorphismAutomaton { states, initial: 0 }
    }

    pub fn initial_swap(&self) -> bool {
        self.states[self.initial].swap
    }

    /// Restriction to the subtree at input letter `bit`.
    pub fn restrict(&self, bit: bool) -> Self {
        let s = &self.states[self.initial];
        AutomorphismAutomaton {
            states: self.states.clone(),
            initial: if bit { s.right } else { s.left },
        }
        .renumber_bfs()
    }

    /// Applies the automorphism to a root-to-node path.
    pub fn act_on_word(&self, word: &[bool]) -> Vec<bool> {
        let mut out = Vec::with_capacity(word.len());
        let mut state = self.initial;
        for &b in word {
            let s = &self.states[state];
            out.push(b ^ s.swap);
            state = if b { s.right } else { s.left };
        }
        out
    }

    /// Composition `self ∘ rhs` (rhs acts first) by the product construction.
    pub fn compose(&self, rhs: &AutomorphismAutomaton) -> AutomorphismAutomaton {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut states: Vec<AState> = Vec::new();
        let mut pending = vec![(self.initial, rhs.initial)];
        index.insert((self.initial, rhs.initial), 0);
        states.push(AState {
            swap: false,
            left: 0,
            right: 0,
        });
        while let Some((sa, sb)) = pending.pop() {
            let id = index[&(sa, sb)];
            let b = rhs.states[sb];
            let a = self.states[sa];
            let swap = a.swap ^ b.swap;
            let mut succ = [0usize; 2];
            for (input, slot) in succ.iter_mut().enumerate() {
                let bit = input == 1;
                let next_b = if bit { b.right } else { b.left };
                let mid = bit ^ b.swap;
                let next_a = if mid { a.right } else { a.left };
                let key = (next_a, next_b);
                let next_id = *index.entry(key).or_insert_with(|| {
                    states.push(AState {
                        swap: false,
                        left: 0,
                        right: 0,
                    });
                    pending.push(key);
                    states.len() - 1
                });
                *slot = next_id;
            }
            states[id] = AState {
                swap,
                left: succ[0],
                right: succ[1],
            };
        }
        AutomorphismAutomaton { states, initial: 0 }.minimize()
    }

    /// The inverse automorphism: same swap bits along the matched paths, with
    /// successors re-indexed by output letters.
    pub fn inverse(&self) -> AutomorphismAutomaton {
        let states = self
            .states
            .iter()
            .map(|s| {
                // On input c (an output letter of self), descend where the
                // original input letter c ^ swap went.
                AState {
                    swap: s.swap,
                    left: if s.swap { s.right } else { s.left },
                    right: if s.swap { s.left } else { s.right },
                }
            })
            .collect();
        AutomorphismAutomaton {
            states,
            initial: self.initial,
        }
        .minimize()
    }

    /// Behavioral equality by breadth-first exploration of state pairs.
    pub fn equal(&self, other: &AutomorphismAutomaton) -> bool {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        seen.insert((self.initial, other.initial));
        while let Some((sa, sb)) = queue.pop_front() {
            let (a, b) = (self.states[sa], other.states[sb]);
            if a.swap != b.swap {
                return false;
            }
            for pair in [(a.left, b.left), (a.right, b.right)] {
                if seen.insert(pair) {
                    queue.push_back(pair);
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.equal(&AutomorphismAutomaton::identity())
    }

    /// Finitary means only finitely many portrait nodes swap: every state on
    /// or reachable from a cycle must be swap-free.
    pub fn is_finitary(&self) -> bool {
        let n = self.states.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, s) in self.states.iter().enumerate() {
            reach[i][s.left] = true;
            reach[i][s.right] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let relevant = i == self.initial || reach[self.initial][i];
            if relevant && reach[i][i] {
                if self.states[i].swap {
                    return false;
                }
                for j in 0..n {
                    if reach[i][j] && self.states[j].swap {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Canonical BFS numbering from the initial state (left successor first);
    /// unreachable states are dropped. Used for bit-exact serialization.
    pub fn renumber_bfs(&self) -> AutomorphismAutomaton {
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([self.initial]);
        order.insert(self.initial, 0);
        let mut listed = vec![self.initial];
        while let Some(s) = queue.pop_front() {
            for next in [self.states[s].left, self.states[s].right] {
                if !order.contains_key(&next) {
                    order.insert(next, listed.len());
                    listed.push(next);
                    queue.push_back(next);
                }
            }
        }
        let states = listed
            .iter()
            .map(|&old| {
                let s = &self.states[old];
                AState {
                    swap: s.swap,
                    left: order[&s.left],
                    right: order[&s.right],
                }
            })
            .collect();
        AutomorphismAutomaton { states, initial: 0 }
    }

    /// Behavioral minimization by partition refinement, then BFS numbering.
    pub fn minimize(&self) -> AutomorphismAutomaton {
        let a = self.renumber_bfs();
        let n = a.states.len();
        let mut class: Vec<usize> = a.states.iter().map(|s| usize::from(s.swap)).collect();
        loop {
            let mut sig: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let mut next: Vec<usize> = vec![0; n];
            for (i, s) in a.states.iter().enumerate() {
                let key = (class[i], class[s.left], class[s.right]);
                let len = sig.len();
                next[i] = *sig.entry(key).or_insert(len);
            }
            if next == class {
                break;
            }
            class = next;
        }
        let mut rep: HashMap<usize, usize> = HashMap::new();
        let mut chosen: Vec<usize> = Vec::new();
        for (i, _) in a.states.iter().enumerate() {
            rep.entry(class[i]).or_insert_with(|| {
                chosen.push(i);
                chosen.len() - 1
            });
        }
        let states: Vec<AState> = chosen
            .iter()
            .map(|&i| {
                let s = &a.states[i];
                AState {
                    swap: s.swap,
                    left: rep[&class[s.left]],
                    right: rep[&class[s.right]],
                }
            })
            .collect();
        AutomorphismAutomaton {
            states,
            initial: rep[&class[a.initial]],
        }
        .renumber_bfs()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn identity_fixes_words() {
        let id = AutomorphismAutomaton::identity();
        for w in ["0", "1", "0110", "111000"] {
            assert_eq!(id.act_on_word(&bits(w)), bits(w));
        }
    }

    #[test]
    fn root_swap_flips_first_letter() {
        let r = AutomorphismAutomaton::root_swap();
        assert_eq!(r.act_on_word(&bits("0110")), bits("1110"));
        assert_eq!(r.act_on_word(&bits("10")), bits("00"));
    }

    #[test]
    fn spine_swap_flips_letters_past_start_depth() {
        // swaps at 0^k for k ≥ 2: α(0^a 1 w) = 0^2 1^{a-2} 0 w for a ≥ 2
        let a = AutomorphismAutomaton::spine_swap(2);
        assert_eq!(a.act_on_word(&bits("00001")), bits("00110"));
        assert_eq!(a.act_on_word(&bits("01")), bits("01"));
        assert_eq!(a.act_on_word(&bits("1")), bits("1"));
    }

    #[test]
    fn compose_matches_word_action() {
        let a = AutomorphismAutomaton::spine_swap(1);
        let b = AutomorphismAutomaton::root_swap();
        let ab = a.compose(&b);
        for w in ["0", "01", "0001", "1101", "00000"] {
            let w = bits(w);
            assert_eq!(ab.act_on_word(&w), a.act_on_word(&b.act_on_word(&w)));
        }
    }

    #[test]
    fn inverse_cancels() {
        for a in [
            AutomorphismAutomaton::root_swap(),
            AutomorphismAutomaton::mirror(),
            AutomorphismAutomaton::spine_swap(2),
        ] {
            assert!(a.compose(&a.inverse()).is_identity());
            assert!(a.inverse().compose(&a).is_identity());
        }
    }

    #[test]
    fn inverse_matches_word_action() {
        let a = AutomorphismAutomaton::spine_swap(1);
        let inv = a.inverse();
        for w in ["0", "0110", "0001", "10101"] {
            let w = bits(w);
            assert_eq!(inv.act_on_word(&a.act_on_word(&w)), w);
        }
    }

    #[test]
    fn equality_ignores_redundant_states() {
        let padded = AutomorphismAutomaton::new(
            vec![
                AState {
                    swap: false,
                    left: 1,
                    right: 1,
                },
                AState {
                    swap: false,
                    left: 0,
                    right: 1,
                },
            ],
            0,
        )
        .unwrap();
        assert!(padded.equal(&AutomorphismAutomaton::identity()));
        assert!(padded.is_identity());
        assert_eq!(padded.minimize().state_count(), 1);
    }

    #[test]
    fn composition_associates() {
        let xs = [
            AutomorphismAutomaton::root_swap(),
            AutomorphismAutomaton::spine_swap(1),
            AutomorphismAutomaton::mirror(),
        ];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let lhs = a.compose(b).compose(c);
                    let rhs = a.compose(&b.compose(c));
                    assert!(lhs.equal(&rhs));
                }
            }
        }
    }

    #[test]
    fn finitary_detection() {
        assert!(AutomorphismAutomaton::identity().is_finitary());
        assert!(AutomorphismAutomaton::root_swap().is_finitary());
        assert!(!AutomorphismAutomaton::mirror().is_finitary());
        assert!(!AutomorphismAutomaton::spine_swap(3).is_finitary());
    }

    #[test]
    fn mirror_complements_every_letter() {
        let m = AutomorphismAutomaton::mirror();
        assert_eq!(m.act_on_word(&bits("0101")), bits("1010"));
    }
}
