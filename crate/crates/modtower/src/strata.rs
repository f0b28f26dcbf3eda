//! The stratum poset and cell complexes of the real moduli spaces.
//!
//! Cells of the two-sheeted cover are equivalence classes of pairs
//! `(𝒯, σ)` — a nested collection and a permutation — where `(𝒯, σ) ∼
//! (j_{𝒯''}𝒯, σω_{𝒯''})` for every subset `𝒯'' ⊆ 𝒯`, with the factors of
//! `ω_{𝒯''}` ordered containment-increasingly. The orbit of a pair has one
//! representative per subset; a [`StratumClass`] stores the lexicographic
//! minimum of `(perm image array, sorted interval list)` over the orbit.
//!
//! The minimum is found without enumerating the orbit: a subset flip reverses
//! the child order of the flipped vertices' subtrees, and flips compose so
//! that each non-root vertex's local child order is an independent binary
//! choice. Minimizing bottom-up over the tree therefore yields the same
//! canonical form in polynomial time; `StratumClass::orbit` retains the
//! exhaustive enumeration for cross-checks.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{omega_product, Interval, NestedCollection};
use crate::perm::Permutation;
use crate::tree::PlanarTree;
use crate::unrooted::UnrootedLabeledTree;

/// A canonical equivalence class `[𝒯, σ]` of the stratum poset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct StratumClass {
    collection: NestedCollection,
    perm: Permutation,
}

impl StratumClass {
    /// Canonicalizes a pair `(𝒯, σ)`.
    pub fn new(collection: NestedCollection, perm: Permutation) -> Result<Self> {
        if collection.ambient() != perm.size() {
            return Err(Error::AmbientMismatch(collection.ambient(), perm.size()));
        }
        let tree = PlanarTree::from_nested(&collection);
        let labels: Vec<usize> = (1..=perm.size()).map(|i| perm.apply(i)).collect();
        let (arranged, seq) = arrange_min(&tree, &labels, true);
        let canon_perm = Permutation::new(seq).expect("rearranged labels are a permutation");
        let canon_coll = arranged.to_nested().expect("arranged tree is valid");
        Ok(StratumClass {
            collection: canon_coll,
            perm: canon_perm,
        })
    }

    pub fn top(n: usize, perm: Permutation) -> Result<Self> {
        StratumClass::new(NestedCollection::empty(n), perm)
    }

    pub fn ambient(&self) -> usize {
        self.perm.size()
    }

    /// Cell dimension `(n − 2) − |𝒯|`.
    pub fn dim(&self) -> usize {
        self.ambient() - 2 - self.collection.len()
    }

    pub fn collection(&self) -> &NestedCollection {
        &self.collection
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// All `2^{|𝒯|}` representatives `(j_{𝒯''}𝒯, σω_{𝒯''})` of the class.
    pub fn orbit(&self) -> Vec<(NestedCollection, Permutation)> {
        self.collection
            .subsets()
            .map(|subset| {
                let coll = crate::interval::j_product(&self.collection, &subset);
                let perm = self
                    .perm
                    .compose(&omega_product(&subset, self.ambient()).expect("subset fits"));
                (coll, perm)
            })
            .collect()
    }

    /// The image `[j_S 𝒯, σω_S]` under the lifted antipodal involution.
    pub fn antipodal(&self) -> StratumClass {
        let coll = self.collection.conjugated_by_full();
        let perm = self
            .perm
            .compose(&Permutation::full_reversal(self.ambient()));
        StratumClass::new(coll, perm).expect("antipodal image is valid")
    }

    /// Image under the dyadic stabilization embedding: doubled intervals plus
    /// one caret interval per old leaf, with the expanded permutation.
    pub fn stabilize(&self) -> StratumClass {
        let n = self.ambient();
        let mut intervals: Vec<Interval> = self
            .collection
            .intervals()
            .iter()
            .map(|iv| iv.expand())
            .collect();
        for i in 1..=n {
            intervals.push(Interval::new(2 * i - 1, 2 * i).expect("caret interval"));
        }
        let coll = NestedCollection::new(2 * n, intervals).expect("expansion stays nested");
        StratumClass::new(coll, self.perm.expand()).expect("stabilized class is valid")
    }

    /// Codimension-1 faces with multiplicities: classes of `(𝒯 ∪ {I}, σ)`
    /// over all insertable proper intervals `I`.
    pub fn faces(&self) -> Vec<(StratumClass, usize)> {
        let n = self.ambient();
        let mut out: Vec<StratumClass> = Vec::new();
        for lo in 1..n {
            for hi in lo + 1..=n {
                let iv = Interval::new(lo, hi).expect("lo < hi");
                if !iv.is_proper(n) || self.collection.contains(&iv) {
                    continue;
                }
                if let Ok(coll) = self.collection.with_inserted(iv) {
                    out.push(
                        StratumClass::new(coll, self.perm.clone()).expect("face class is valid"),
                    );
                }
            }
        }
        count_multiplicities(out)
    }

    /// Theorem-A partial order: is `self` (the lower-dimensional class) a face
    /// of `b`? Checked by intersecting the two orbits.
    pub fn is_face_of(&self, b: &StratumClass) -> Result<bool> {
        if self.ambient() != b.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), b.ambient()));
        }
        if self.collection.len() < b.collection.len() {
            return Ok(false);
        }
        let b_orbit: HashMap<Permutation, Vec<NestedCollection>> =
            b.orbit()
                .into_iter()
                .fold(HashMap::new(), |mut m, (coll, perm)| {
                    m.entry(perm).or_default().push(coll);
                    m
                });
        for (coll, perm) in self.orbit() {
            if let Some(cands) = b_orbit.get(&perm) {
                for cand in cands {
                    if cand.intervals().iter().all(|iv| coll.contains(iv)) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }
}

/// Bottom-up lexicographic minimization over independent child-order flips.
/// The root's child order is fixed; every other vertex picks the smaller of
/// the forward and reversed concatenation of its minimized children.
fn arrange_min(tree: &PlanarTree, labels: &[usize], is_root: bool) -> (PlanarTree, Vec<usize>) {
    match tree {
        PlanarTree::Leaf => (PlanarTree::Leaf, labels.to_vec()),
        PlanarTree::Node(children) => {
            let mut arranged: Vec<(PlanarTree, Vec<usize>)> = Vec::with_capacity(children.len());
            let mut offset = 0;
            for c in children {
                let k = c.leaf_count();
                arranged.push(arrange_min(c, &labels[offset..offset + k], false));
                offset += k;
            }
            let forward: Vec<usize> = arranged.iter().flat_map(|(_, s)| s.clone()).collect();
            if !is_root {
                let backward: Vec<usize> =
                    arranged.iter().rev().flat_map(|(_, s)| s.clone()).collect();
                if backward < forward {
                    arranged.reverse();
                    let trees = arranged.into_iter().map(|(t, _)| t).collect();
                    return (PlanarTree::Node(trees), backward);
                }
            }
            let trees = arranged.into_iter().map(|(t, _)| t).collect();
            (PlanarTree::Node(trees), forward)
        }
    }
}

fn count_multiplicities<T: Ord>(mut items: Vec<T>) -> Vec<(T, usize)> {
    items.sort();
    let mut out: Vec<(T, usize)> = Vec::new();
    for item in items {
        match out.last_mut() {
            Some((last, mult)) if *last == item => *mult += 1,
            _ => out.push((item, 1)),
        }
    }
    out
}

/// A finite cell complex: cells sorted by `(dim, canonical key)`, with
/// codimension-1 incidences (face index, multiplicity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplexModel {
    pub n: usize,
    pub dims: Vec<usize>,
    pub keys: Vec<CellKey>,
    /// incidence[i] lists (face index, multiplicity) for cell i.
    pub incidence: Vec<Vec<(usize, usize)>>,
}

/// Presentation-independent cell payload used for ordering and JSON output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CellKey {
    pub perm: Permutation,
    pub collection: Vec<Interval>,
}

impl CellComplexModel {
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().unwrap_or(0);
        let mut f = vec![0usize; top + 1];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.len()
    }

    /// Indices whose boundary contains a face an even number of times; empty
    /// for a regular decomposition of the cover.
    pub fn even_incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, faces) in self.incidence.iter().enumerate() {
            for &(j, m) in faces {
                if m % 2 == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Default size bound for complex construction.
pub const DEFAULT_MAX_N: usize = 7;

fn check_range(n: usize, max_n: usize) -> Result<()> {
    if n < 3 || n > max_n {
        return Err(Error::SizeOutOfRange {
            n,
            min: 3,
            max: max_n,
        });
    }
    Ok(())
}

/// All nested collections of proper intervals in `{1..n}` (one per planar
/// tree with `n` leaves).
pub fn all_nested_collections(n: usize) -> Vec<Vec<Interval>> {
    fn inner(n: usize, memo: &mut HashMap<usize, Vec<Vec<Interval>>>) -> Vec<Vec<Interval>> {
        if n == 1 {
            return vec![Vec::new()];
        }
        if let Some(hit) = memo.get(&n) {
            return hit.clone();
        }
        let mut out = Vec::new();
        // Compositions of n into at least two parts: children spans of the root.
        for comp in compositions(n) {
            let mut per_part: Vec<Vec<Vec<Interval>>> = Vec::new();
            let mut offset = 0;
            for &size in &comp {
                let choices: Vec<Vec<Interval>> = if size == 1 {
                    vec![Vec::new()]
                } else {
                    inner(size, memo)
                        .into_iter()
                        .map(|sub| {
                            let mut v: Vec<Interval> =
                                sub.iter().map(|iv| iv.translate(offset)).collect();
                            v.push(Interval::new(offset + 1, offset + size).expect("size ≥ 2"));
                            v
                        })
                        .collect()
                };
                per_part.push(choices);
                offset += size;
            }
            let mut acc: Vec<Vec<Interval>> = vec![Vec::new()];
            for choices in per_part {
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for base in &acc {
                    for choice in &choices {
                        let mut v = base.clone();
                        v.extend_from_slice(choice);
                        next.push(v);
                    }
                }
                acc = next;
            }
            out.extend(acc);
        }
        memo.insert(n, out.clone());
        out
    }
    let mut memo = HashMap::new();
    inner(n, &mut memo)
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if acc.len() >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for first in 1..=n {
            acc.push(first);
            rec(n - first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// All of `Σ_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            rec(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|v| Permutation::new(v).expect("generated bijections"))
        .collect()
}

fn assemble<K: Ord + Clone + std::hash::Hash>(
    n: usize,
    mut cells: Vec<(usize, K)>,
    faces_of: impl Fn(&K) -> Vec<(K, usize)>,
    key_of: impl Fn(&K) -> CellKey,
) -> CellComplexModel {
    cells.sort();
    cells.dedup();
    let index: HashMap<K, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, (_, k))| (k.clone(), i))
        .collect();
    let incidence = cells
        .iter()
        .map(|(_, k)| {
            faces_of(k)
                .into_iter()
                .map(|(f, m)| (index[&f], m))
                .collect()
        })
        .collect();
    CellComplexModel {
        n,
        dims: cells.iter().map(|(d, _)| *d).collect(),
        keys: cells.iter().map(|(_, k)| key_of(k)).collect(),
        incidence,
    }
}

/// Builds the face poset of the two-sheeted cover for `n` labels.
pub fn build_tilde_complex(n: usize) -> Result<CellComplexModel> {
    build_tilde_complex_bounded(n, DEFAULT_MAX_N)
}

pub fn build_tilde_complex_bounded(n: usize, max_n: usize) -> Result<CellComplexModel> {
    check_range(n, max_n)?;
    let collections = all_nested_collections(n);
    let perms = all_permutations(n);
    let cells: Vec<(usize, StratumClass)> = perms
        .par_iter()
        .flat_map_iter(|perm| {
            collections.iter().map(move |ivs| {
                let coll = NestedCollection::new(n, ivs.clone()).expect("generated nested");
                let class = StratumClass::new(coll, perm.clone()).expect("valid class");
                (class.dim(), class)
            })
        })
        .collect();
    Ok(assemble(
        n,
        cells,
        |c| c.faces(),
        |c| CellKey {
            perm: c.perm.clone(),
            collection: c.collection.intervals().to_vec(),
        },
    ))
}

/// Quotient of the cover by the antipodal involution.
pub fn build_bar_complex(n: usize) -> Result<CellComplexModel> {
    build_bar_complex_bounded(n, DEFAULT_MAX_N)
}

pub fn build_bar_complex_bounded(n: usize, max_n: usize) -> Result<CellComplexModel> {
    check_range(n, max_n)?;
    let collections = all_nested_collections(n);
    let perms = all_permutations(n);
    let cells: Vec<(usize, StratumClass)> = perms
        .par_iter()
        .flat_map_iter(|perm| {
            collections.iter().map(move |ivs| {
                let coll = NestedCollection::new(n, ivs.clone()).expect("generated nested");
                let class = StratumClass::new(coll, perm.clone()).expect("valid class");
                let rep = antipodal_orbit_rep(&class);
                (rep.dim(), rep)
            })
        })
        .collect();
    Ok(assemble(
        n,
        cells,
        |c| {
            let mapped: Vec<StratumClass> = c
                .faces()
                .into_iter()
                .flat_map(|(f, m)| std::iter::repeat(antipodal_orbit_rep(&f)).take(m))
                .collect();
            count_multiplicities(mapped)
        },
        |c| CellKey {
            perm: c.perm.clone(),
            collection: c.collection.intervals().to_vec(),
        },
    ))
}

/// Minimum of `{c, antipodal(c)}`, the stored representative of a quotient cell.
pub fn antipodal_orbit_rep(c: &StratumClass) -> StratumClass {
    let a = c.antipodal();
    if a < *c {
        a
    } else {
        c.clone()
    }
}

/// Independent model of the quotient from unrooted labeled trees under the
/// edge-reflection moves.
pub fn build_bar_complex_unrooted(n: usize) -> Result<CellComplexModel> {
    build_bar_complex_unrooted_bounded(n, DEFAULT_MAX_N)
}

pub fn build_bar_complex_unrooted_bounded(n: usize, max_n: usize) -> Result<CellComplexModel> {
    check_range(n, max_n)?;
    let collections = all_nested_collections(n);
    let perms = all_permutations(n);
    let cells: Vec<(usize, UnrootedLabeledTree)> = perms
        .par_iter()
        .flat_map_iter(|perm| {
            collections.iter().map(move |ivs| {
                let coll = NestedCollection::new(n, ivs.clone()).expect("generated nested");
                let t = UnrootedLabeledTree::new(PlanarTree::from_nested(&coll), perm.clone())
                    .expect("valid tree");
                let canon = t.canonical();
                (n - 2 - ivs.len(), canon)
            })
        })
        .collect();
    Ok(assemble(
        n,
        cells,
        |t| {
            let nested = t.tree.to_nested().expect("valid tree");
            let mut out = Vec::new();
            for lo in 1..n {
                for hi in lo + 1..=n {
                    let iv = Interval::new(lo, hi).expect("lo < hi");
                    if !iv.is_proper(n) || nested.contains(&iv) {
                        continue;
                    }
                    if let Ok(coll) = nested.with_inserted(iv) {
                        let refined = UnrootedLabeledTree::new(
                            PlanarTree::from_nested(&coll),
                            t.perm.clone(),
                        )
                        .expect("refined tree is valid");
                        out.push(refined.canonical());
                    }
                }
            }
            count_multiplicities(out)
        },
        |t| CellKey {
            perm: t.perm.clone(),
            collection: t
                .tree
                .to_nested()
                .expect("valid tree")
                .intervals()
                .to_vec(),
        },
    ))
}

/// Checks that the antipodal involution is fixed-point free on the cover.
pub fn antipodal_is_free(n: usize) -> Result<bool> {
    let collections = all_nested_collections(n);
    for perm in all_permutations(n) {
        for ivs in &collections {
            let coll = NestedCollection::new(n, ivs.clone())?;
            let class = StratumClass::new(coll, perm.clone())?;
            if class.antipodal() == class {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn class(n: usize, ivs: Vec<Interval>, images: Vec<usize>) -> StratumClass {
        StratumClass::new(
            NestedCollection::new(n, ivs).unwrap(),
            Permutation::new(images).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn canonicalize_is_idempotent_and_orbit_invariant() {
        let c = class(5, vec![iv(1, 3), iv(4, 5)], vec![3, 1, 2, 5, 4]);
        for (coll, perm) in c.orbit() {
            assert_eq!(StratumClass::new(coll, perm).unwrap(), c);
        }
    }

    #[test]
    fn canonical_matches_exhaustive_minimum() {
        // The greedy arrangement must match the subset-enumeration minimum.
        let perms = all_permutations(5);
        for ivs in all_nested_collections(5) {
            for perm in perms.iter().take(24) {
                let coll = NestedCollection::new(5, ivs.clone()).unwrap();
                let c = StratumClass::new(coll, perm.clone()).unwrap();
                let min = c
                    .orbit()
                    .into_iter()
                    .map(|(coll, perm)| (perm.images().to_vec(), coll.intervals().to_vec()))
                    .min()
                    .unwrap();
                assert_eq!(
                    (c.perm.images().to_vec(), c.collection.intervals().to_vec()),
                    min
                );
            }
        }
    }

    #[test]
    fn empty_collection_is_fixed() {
        let c = class(4, vec![], vec![2, 4, 3, 1]);
        assert_eq!(c.perm().images(), &[2, 4, 3, 1]);
    }

    #[test]
    fn single_caret_orbit_of_two() {
        let a = class(3, vec![iv(1, 2)], vec![1, 2, 3]);
        let b = class(3, vec![iv(1, 2)], vec![2, 1, 3]);
        assert_eq!(a, b);
    }

    #[test]
    fn disjoint_pair_orbit_size_four() {
        let c = class(4, vec![iv(1, 2), iv(3, 4)], vec![1, 2, 3, 4]);
        let mut orbit = c.orbit();
        orbit.sort();
        orbit.dedup();
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn face_relation_examples() {
        // Every cell is a face of itself.
        let top = class(3, vec![], vec![1, 2, 3]);
        assert!(top.is_face_of(&top).unwrap());
        // ({[1,2]}, id₃) is a face of (∅, id₃) and of (∅, (12)).
        let f = class(3, vec![iv(1, 2)], vec![1, 2, 3]);
        assert!(f.is_face_of(&top).unwrap());
        let top2 = class(3, vec![], vec![2, 1, 3]);
        assert!(f.is_face_of(&top2).unwrap());
        // Dimensions must relate.
        assert!(!top.is_face_of(&f).unwrap());
    }

    #[test]
    fn faces_by_insertion_agree_with_order_on_n4() {
        let complex = build_tilde_complex(4).unwrap();
        let classes: Vec<StratumClass> = complex
            .keys
            .iter()
            .map(|k| {
                StratumClass::new(
                    NestedCollection::new(4, k.collection.clone()).unwrap(),
                    k.perm.clone(),
                )
                .unwrap()
            })
            .collect();
        for (i, c) in classes.iter().enumerate() {
            let listed: Vec<usize> = complex.incidence[i].iter().map(|&(j, _)| j).collect();
            for (j, f) in classes.iter().enumerate() {
                if f.collection().len() == c.collection().len() + 1 {
                    let related = f.is_face_of(c).unwrap();
                    assert_eq!(related, listed.contains(&j), "cells {i} / {j}");
                }
            }
        }
    }

    #[test]
    fn tilde_f_vectors() {
        let c3 = build_tilde_complex(3).unwrap();
        assert_eq!(c3.f_vector(), vec![6, 6]);
        assert_eq!(c3.euler_characteristic(), 0);
        let c4 = build_tilde_complex(4).unwrap();
        assert_eq!(c4.f_vector(), vec![30, 60, 24]);
        assert_eq!(c4.euler_characteristic(), -6);
    }

    #[test]
    fn bar_f_vectors() {
        let c3 = build_bar_complex(3).unwrap();
        assert_eq!(c3.f_vector(), vec![3, 3]);
        assert_eq!(c3.euler_characteristic(), 0);
        let c4 = build_bar_complex(4).unwrap();
        assert_eq!(c4.f_vector(), vec![15, 30, 12]);
        assert_eq!(c4.euler_characteristic(), -3);
    }

    #[test]
    fn unrooted_model_matches_quotient() {
        for n in 3..=4 {
            let a = build_bar_complex(n).unwrap();
            let b = build_bar_complex_unrooted(n).unwrap();
            assert_eq!(a.f_vector(), b.f_vector(), "n = {n}");
        }
    }

    #[test]
    fn antipodal_free_and_involutive() {
        assert!(antipodal_is_free(4).unwrap());
        let c = class(4, vec![iv(2, 3)], vec![4, 2, 3, 1]);
        assert_eq!(c.antipodal().antipodal(), c);
    }

    #[test]
    fn antipodal_of_top_cell() {
        let c = class(3, vec![], vec![1, 2, 3]);
        let a = c.antipodal();
        assert_eq!(a.perm().images(), &[3, 2, 1]);
        assert!(a.collection().is_empty());
    }

    #[test]
    fn stabilize_base_point() {
        let base = class(2, vec![], vec![1, 2]);
        let s = base.stabilize();
        assert_eq!(s.ambient(), 4);
        assert_eq!(s.collection().intervals(), &[iv(1, 2), iv(3, 4)]);
        assert!(s.perm().is_identity());
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn stabilize_respects_equivalence() {
        let c = class(4, vec![iv(1, 2), iv(1, 3)], vec![2, 3, 1, 4]);
        for (coll, perm) in c.orbit() {
            let other = StratumClass::new(coll, perm).unwrap();
            assert_eq!(other.stabilize(), c.stabilize());
        }
    }

    #[test]
    fn counts_match_schroeder() {
        assert_eq!(all_nested_collections(4).len(), 11);
        assert_eq!(all_nested_collections(5).len(), 45);
        assert_eq!(all_nested_collections(6).len(), 197);
    }
}
