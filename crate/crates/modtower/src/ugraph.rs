//! Mutable unrooted planar tree with labeled leaves.
//!
//! Working form for the cyclic tower action: vertices keep stable ids across
//! leaf expansions, so per-leaf data (automata) can follow the surgery. Leaves
//! carry the reference position they occupy in the ambient complete tree; the
//! planar structure is the counterclockwise neighbor order at each vertex.
//!
//! The planted reading convention matches [`crate::unrooted`]: rooting at a
//! leaf, the children of a vertex entered from `u` are its neighbors in ccw
//! order starting just after `u`.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::PlanarTree;
use crate::unrooted::UnrootedLabeledTree;

#[derive(Clone, Debug)]
pub struct UGraph {
    /// vertex → ccw-ordered neighbor list
    adj: Vec<Vec<usize>>,
    /// vertex → leaf label (reference position), None for internal vertices
    labels: Vec<Option<usize>>,
}

impl UGraph {
    /// Builds the graph of an unrooted labeled tree, with the plant leaf
    /// labeled `1` and planted-position `p` labeled `perm(p) + 1`.
    pub fn from_unrooted(t: &UnrootedLabeledTree) -> UGraph {
        let mut g = UGraph {
            adj: Vec::new(),
            labels: Vec::new(),
        };
        let plant = g.new_vertex(Some(1));
        let mut next_pos = 1usize;
        let root = g.build(&t.tree, t, &mut next_pos);
        g.adj[plant].push(root);
        g.adj[root].insert(0, plant);
        g
    }

    fn build(&mut self, t: &PlanarTree, src: &UnrootedLabeledTree, next_pos: &mut usize) -> usize {
        match t {
            PlanarTree::Leaf => {
                let label = src.perm.apply(*next_pos) + 1;
                *next_pos += 1;
                self.new_vertex(Some(label))
            }
            PlanarTree::Node(children) => {
                let v = self.new_vertex(None);
                for c in children {
                    let cv = self.build(c, src, next_pos);
                    self.adj[v].push(cv);
                    self.adj[cv].insert(0, v);
                }
                v
            }
        }
    }

    fn new_vertex(&mut self, label: Option<usize>) -> usize {
        self.adj.push(Vec::new());
        self.labels.push(label);
        self.adj.len() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.iter().flatten().count()
    }

    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.labels[v]
    }

    pub fn leaf_with_label(&self, j: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == Some(j))
            .ok_or(Error::LeafOutOfRange {
                index: j,
                count: self.leaf_count(),
            })
    }

    /// Relabels every leaf through `f`.
    pub fn relabel(&mut self, f: impl Fn(usize) -> usize) {
        for l in self.labels.iter_mut() {
            if let Some(x) = l {
                *x = f(*x);
            }
        }
    }

    /// Splits the leaf labeled `j` into a caret. Labels above `j` shift up;
    /// the two children are labeled `(j, j+1)`, or `(j+1, j)` when `crossed`.
    /// Returns the child vertex ids in ccw order (first, second).
    pub fn expand_leaf(&mut self, j: usize, crossed: bool) -> Result<(usize, usize)> {
        let v = self.leaf_with_label(j)?;
        self.relabel(|x| if x > j { x + 1 } else { x });
        let (first, second) = if crossed { (j + 1, j) } else { (j, j + 1) };
        let a = self.new_vertex(Some(first));
        let b = self.new_vertex(Some(second));
        self.labels[v] = None;
        // Entering v from its single neighbor, children read (a, b) ccw.
        self.adj[v].push(a);
        self.adj[v].push(b);
        self.adj[a].push(v);
        self.adj[b].push(v);
        Ok((a, b))
    }

    /// All leaf vertices with their labels.
    pub fn leaves(&self) -> Vec<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.map(|x| (v, x)))
            .collect()
    }

    /// Splits every leaf into a caret: label `x` becomes the pair `2x−1, 2x`.
    /// The dyadic stabilization of the unrooted stratum.
    pub fn double_all_leaves(&mut self) {
        let leaves = self.leaves();
        for (v, x) in leaves {
            self.labels[v] = None;
            let a = self.new_vertex(Some(2 * x - 1));
            let b = self.new_vertex(Some(2 * x));
            self.adj[v].push(a);
            self.adj[v].push(b);
            self.adj[a].push(v);
            self.adj[b].push(v);
        }
    }

    /// Reads back the planted form rooted at the leaf labeled 1.
    pub fn to_unrooted(&self) -> Result<UnrootedLabeledTree> {
        let plant = self.leaf_with_label(1)?;
        let start = self.adj[plant][0];
        let mut labels = Vec::new();
        let tree = self.read(start, plant, &mut labels);
        let perm = Permutation::new(labels.iter().map(|l| l - 1).collect())?;
        UnrootedLabeledTree::new(tree, perm)
    }

    fn read(&self, v: usize, from: usize, labels: &mut Vec<usize>) -> PlanarTree {
        if let Some(l) = self.labels[v] {
            labels.push(l);
            return PlanarTree::Leaf;
        }
        let pos = self.adj[v]
            .iter()
            .position(|&u| u == from)
            .expect("entered from a neighbor");
        let k = self.adj[v].len();
        let children = (1..k)
            .map(|i| {
                let u = self.adj[v][(pos + i) % k];
                self.read(u, v, labels)
            })
            .collect();
        PlanarTree::Node(children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{Interval, NestedCollection};

    #[test]
    fn round_trip() {
        let c = NestedCollection::new(5, vec![Interval::new(2, 4).unwrap()]).unwrap();
        let t = UnrootedLabeledTree::new(
            PlanarTree::from_nested(&c),
            Permutation::new(vec![3, 1, 5, 2, 4]).unwrap(),
        )
        .unwrap();
        let g = UGraph::from_unrooted(&t);
        assert_eq!(g.to_unrooted().unwrap(), t);
    }

    #[test]
    fn expansion_splits_and_shifts() {
        let t =
            UnrootedLabeledTree::new(PlanarTree::star(3), Permutation::identity(3)).unwrap();
        let mut g = UGraph::from_unrooted(&t);
        g.expand_leaf(2, false).unwrap();
        let back = g.to_unrooted().unwrap();
        // Labels were 1,2,3,4 around the circle; 2 split into (2,3).
        assert_eq!(back.perm.images(), &[1, 2, 3, 4]);
        assert_eq!(
            back.tree.to_nested().unwrap().intervals(),
            &[Interval::new(1, 2).unwrap()]
        );
    }

    #[test]
    fn expansion_at_the_plant_leaf() {
        let t =
            UnrootedLabeledTree::new(PlanarTree::star(3), Permutation::identity(3)).unwrap();
        let mut g = UGraph::from_unrooted(&t);
        g.expand_leaf(1, false).unwrap();
        let back = g.to_unrooted().unwrap();
        assert_eq!(back.ambient(), 4);
        // The new plant is label 1 with caret sibling 2; old labels shifted.
        assert_eq!(back.perm, Permutation::identity(4));
        assert_eq!(
            back.tree.to_nested().unwrap().intervals(),
            &[Interval::new(2, 4).unwrap()]
        );
    }
}
