//! Stable cells of the dyadic towers and the group action on them.
//!
//! The rooted tower stacks the two-sheeted covers at leaf counts `2^k` under
//! dyadic stabilization; the cyclic tower stacks the quotient spaces at leaf
//! counts `3·2^k`. A [`TowerCell`] stores a finite-level canonical class;
//! cells are equal when they agree after stabilizing to a common level.
//!
//! A group symbol acts on a cell by expanding its source side to the complete
//! reference tree of the cell's level, composing the position data, and then
//! expanding the target side to the next complete reference tree, inserting a
//! caret into the stratum at each step. Automaton swap bits route the caret
//! halves, which is where the quasi-braid twists of non-finitary elements
//! enter the combinatorics.

use std::collections::HashMap;

use crate::automaton::AutomorphismAutomaton;
use crate::cyclic::CyclicSymbol;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::neretin::SpheromorphismSymbol;
use crate::perm::Permutation;
use crate::strata::StratumClass;
use crate::thompson::{BinaryTree, TreePairSymbol};
use crate::tree::PlanarTree;
use crate::ugraph::UGraph;
use crate::unrooted::UnrootedLabeledTree;

/// A group element acting on a tower: rooted symbols act on the rooted
/// tower, cyclic symbols on the cyclic one.
#[derive(Clone, Debug)]
pub enum GroupElement {
    V(TreePairSymbol),
    N(SpheromorphismSymbol),
    Cyclic(CyclicSymbol),
}

impl GroupElement {
    fn as_spheromorphism(&self) -> Result<SpheromorphismSymbol> {
        match self {
            GroupElement::V(s) => Ok(SpheromorphismSymbol::from_v(s)),
            GroupElement::N(s) => Ok(s.clone()),
            GroupElement::Cyclic(_) => Err(Error::VariantMismatch(
                "cyclic symbols act on the cyclic tower".into(),
            )),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                Ok(GroupElement::Cyclic(a.compose(b)))
            }
            (GroupElement::Cyclic(_), _) | (_, GroupElement::Cyclic(_)) => Err(
                Error::VariantMismatch("cannot mix rooted and cyclic symbols".into()),
            ),
            (a, b) => Ok(GroupElement::N(
                a.as_spheromorphism()?.compose(&b.as_spheromorphism()?),
            )),
        }
    }
}

/// A cell of one of the towers, stored at a finite level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerCell {
    /// Level `k` cell of the rooted tower: a stratum class at ambient `2^k`.
    Tilde { level: usize, class: StratumClass },
    /// Level `k` cell of the cyclic tower: an unrooted class with `3·2^k`
    /// leaves (ambient `3·2^k − 1` in planted form), stored canonically.
    Bar {
        level: usize,
        class: UnrootedLabeledTree,
    },
}

impl TowerCell {
    pub fn tilde(level: usize, class: StratumClass) -> Result<Self> {
        if level == 0 || class.ambient() != 1 << level {
            return Err(Error::VariantMismatch(format!(
                "ambient {} is not 2^{level}",
                class.ambient()
            )));
        }
        Ok(TowerCell::Tilde { level, class })
    }

    pub fn bar(level: usize, class: UnrootedLabeledTree) -> Result<Self> {
        if class.ambient() + 1 != 3 * (1 << level) {
            return Err(Error::VariantMismatch(format!(
                "unrooted tree with {} leaves is not at level {level}",
                class.ambient() + 1
            )));
        }
        Ok(TowerCell::Bar {
            level,
            class: class.canonical(),
        })
    }

    /// The based point of the rooted tower: the class `(∅, id)` at level 1.
    pub fn base_point_tilde() -> Self {
        TowerCell::Tilde {
            level: 1,
            class: StratumClass::top(2, Permutation::identity(2)).expect("base point"),
        }
    }

    /// The based point of the cyclic tower: the unique cell with 3 leaves.
    pub fn base_point_bar() -> Self {
        let tree = PlanarTree::star(2);
        TowerCell::Bar {
            level: 0,
            class: UnrootedLabeledTree::new(tree, Permutation::identity(2))
                .expect("3-leaf star")
                .canonical(),
        }
    }

    pub fn level(&self) -> usize {
        match self {
            TowerCell::Tilde { level, .. } | TowerCell::Bar { level, .. } => *level,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TowerCell::Tilde { class, .. } => class.dim(),
            TowerCell::Bar { class, .. } => {
                let edges = class.tree.to_nested().expect("valid tree").len();
                class.ambient() + 1 - 3 - edges
            }
        }
    }

    /// Re-expresses the cell at level `m ≥ level` via the stabilization maps.
    pub fn stabilize_to(&self, m: usize) -> Result<TowerCell> {
        if m < self.level() {
            return Err(Error::SizeOutOfRange {
                n: m,
                min: self.level(),
                max: usize::MAX,
            });
        }
        match self {
            TowerCell::Tilde { level, class } => {
                let mut c = class.clone();
                for _ in *level..m {
                    c = c.stabilize();
                }
                Ok(TowerCell::Tilde { level: m, class: c })
            }
            TowerCell::Bar { level, class } => {
                let mut c = class.clone();
                for _ in *level..m {
                    c = bar_stabilize(&c);
                }
                Ok(TowerCell::Bar {
                    level: m,
                    class: c.canonical(),
                })
            }
        }
    }

    /// Equality in the tower: stabilize both cells to a common level.
    pub fn same_cell(&self, other: &TowerCell) -> Result<bool> {
        let m = self.level().max(other.level());
        Ok(self.stabilize_to(m)? == other.stabilize_to(m)?)
    }

    /// Whether a cyclic-tower cell lies in the distinguished associahedron:
    /// some representative carries consecutive labels around the circle.
    pub fn in_k_infinity(&self) -> Result<bool> {
        match self {
            TowerCell::Bar { class, .. } => Ok(class.has_cyclic_labeling()),
            TowerCell::Tilde { .. } => Err(Error::VariantMismatch(
                "the distinguished associahedron lives in the cyclic tower".into(),
            )),
        }
    }
}

/// One full dyadic expansion of an unrooted class.
pub fn bar_stabilize(class: &UnrootedLabeledTree) -> UnrootedLabeledTree {
    let mut g = UGraph::from_unrooted(class);
    g.double_all_leaves();
    g.to_unrooted().expect("doubled tree is valid")
}

/// The action of a group element on a tower cell.
pub fn act(g: &GroupElement, cell: &TowerCell) -> Result<TowerCell> {
    match (g, cell) {
        (GroupElement::Cyclic(sym), TowerCell::Bar { level, class }) => {
            act_bar(sym, *level, class)
        }
        (GroupElement::Cyclic(_), TowerCell::Tilde { .. }) => Err(Error::VariantMismatch(
            "cyclic symbols act on the cyclic tower".into(),
        )),
        (_, TowerCell::Bar { .. }) => Err(Error::VariantMismatch(
            "rooted symbols act on the rooted tower".into(),
        )),
        (g, TowerCell::Tilde { level, class }) => {
            act_tilde(&g.as_spheromorphism()?, *level, class)
        }
    }
}

fn transposition(i: usize, n: usize) -> Permutation {
    Permutation::reversal(Interval::new(i, i + 1).expect("adjacent"), n).expect("fits")
}

fn act_tilde(g: &SpheromorphismSymbol, level: usize, class: &StratumClass) -> Result<TowerCell> {
    // Raise both sides to a common reference tree T_{2^m}.
    let m = g.source.depth().max(level).max(1);
    let g2 = g.expand_source_to(&BinaryTree::complete(m))?;
    let mut cls = class.clone();
    for _ in level..m {
        cls = cls.stabilize();
    }
    let n = 1usize << m;
    let tau = cls.perm().clone();

    // Mixed data: the stratum tree against the symbol's target.
    let mut tree = PlanarTree::from_nested(cls.collection());
    let mut rho = g2.leaf_map.compose(&tau);
    let mut autos: Vec<AutomorphismAutomaton> = (1..=n)
        .map(|p| g2.automata[tau.apply(p) - 1].clone())
        .collect();
    let mut target = g2.target.clone();
    let cap = target.depth();

    // Expand the target to the complete tree T_{2^cap}; every expansion
    // inserts a caret into the stratum, routed by the automaton's swap bit.
    loop {
        let depths = target.leaf_depths();
        let Some(jpos) = depths.iter().position(|&d| d < cap) else {
            break;
        };
        let j = jpos + 1;
        let p = rho.inverse().apply(j);
        let q = autos[p - 1].clone();
        let crossed = q.initial_swap();
        target = target.expand_at(j)?;
        tree = tree.with_caret_at_leaf(p)?;
        rho = rho.simple_expand_at_position(p)?;
        if crossed {
            rho = rho.compose(&transposition(p, rho.size()));
        }
        autos[p - 1] = q.restrict(false);
        autos.insert(p, q.restrict(true));
    }

    let class = StratumClass::new(tree.to_nested()?, rho)?;
    TowerCell::tilde(cap, class)
}

fn act_bar(g: &CyclicSymbol, level: usize, class: &UnrootedLabeledTree) -> Result<TowerCell> {
    let m = g
        .source
        .iter()
        .map(|b| b.depth())
        .max()
        .expect("three branches")
        .max(level);
    let reference: [BinaryTree; 3] = std::array::from_fn(|_| BinaryTree::complete(m));
    let g2 = g.expand_source_to(&reference)?;
    let mut cls = class.clone();
    for _ in level..m {
        cls = bar_stabilize(&cls);
    }

    // Graph with leaf labels = reference positions; automata keyed by vertex.
    let mut graph = UGraph::from_unrooted(&cls);
    let mut autos: HashMap<usize, AutomorphismAutomaton> = graph
        .leaves()
        .into_iter()
        .map(|(v, p)| (v, g2.automata[p - 1].clone()))
        .collect();
    let map = g2.leaf_map.clone();
    graph.relabel(|x| map.apply(x));

    let mut target = g2.target.clone();
    let cap = target.iter().map(|b| b.depth()).max().expect("branches");
    loop {
        let mut split = None;
        let mut offset = 0usize;
        'scan: for b in 0..3 {
            for (local, d) in target[b].leaf_depths().into_iter().enumerate() {
                if d < cap {
                    split = Some((b, local + 1, offset + local + 1));
                    break 'scan;
                }
            }
            offset += target[b].leaf_count();
        }
        let Some((b, local, j)) = split else { break };
        let v = graph.leaf_with_label(j)?;
        let q = autos.remove(&v).expect("leaf automaton");
        let crossed = q.initial_swap();
        target[b] = target[b].expand_at(local)?;
        let (va, vb) = graph.expand_leaf(j, crossed)?;
        autos.insert(va, q.restrict(false));
        autos.insert(vb, q.restrict(true));
    }

    let result = graph.to_unrooted()?;
    TowerCell::bar(cap, result)
}
