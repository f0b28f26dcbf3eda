//! Words in the quasi-braid groups `J_n`.
//!
//! `J_n` is generated by involutions `α_T`, one per interval `T` of leaf
//! labels (equivalently, per connected Coxeter subset), subject to
//!
//! * `α_T² = 1`,
//! * `α_T α_{T'} = α_{j_T T'} α_T` when `T' ⊆ T` (slide),
//! * `α_T α_{T'} = α_{T'} α_T` when the supports share no label (commute).
//!
//! A [`QBWord`] is a plain factor sequence; the leftmost factor acts last
//! under the projection `φ` to the symmetric group. Since the word problem is
//! not known to be solvable, equalities are established by checkable
//! [`Derivation`] certificates or refuted by the invariants `φ`, the parity
//! length `ℓ`, and the per-support-size factor counts mod 2 (the mod-2
//! abelianization: slides preserve support size, so sizes index the
//! generator classes).

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::Permutation;

/// A generator `α_T` of `J_n`, indexed by its support interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct QBGenerator {
    pub support: Interval,
}

/// A word in the generators of `J_n`. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QBWord {
    n: usize,
    factors: Vec<Interval>,
}

impl std::fmt::Debug for QBWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "J{}:", self.n)?;
        for iv in &self.factors {
            write!(f, " a{:?}", iv)?;
        }
        Ok(())
    }
}

impl QBWord {
    pub fn new(n: usize, factors: Vec<Interval>) -> Result<Self> {
        for iv in &factors {
            if iv.hi() > n {
                return Err(Error::IntervalOutOfRange {
                    lo: iv.lo(),
                    hi: iv.hi(),
                    n,
                });
            }
        }
        Ok(QBWord { n, factors })
    }

    pub fn identity(n: usize) -> Self {
        QBWord {
            n,
            factors: Vec::new(),
        }
    }

    pub fn generator(n: usize, support: Interval) -> Result<Self> {
        QBWord::new(n, vec![support])
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Interval] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `φ`: the product of the support reversals, rightmost factor first.
    pub fn phi(&self) -> Permutation {
        let mut acc = Permutation::identity(self.n);
        for t in self.factors.iter().rev() {
            acc = Permutation::reversal(*t, self.n)
                .expect("factor fits ambient")
                .compose(&acc);
        }
        acc
    }

    pub fn is_pure(&self) -> bool {
        self.phi().is_identity()
    }

    /// The parity length `ℓ = Σ (1 + |T_i|) mod 2`, with `|T|` the support
    /// cardinality. Well-defined on the group: every defining relation
    /// preserves it.
    pub fn length(&self) -> bool {
        self.factors.iter().map(|t| 1 + t.size()).sum::<usize>() % 2 == 1
    }

    pub fn concat(&self, other: &QBWord) -> Result<QBWord> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(QBWord { n: self.n, factors })
    }

    /// Inverse word: factors reversed (each generator is an involution).
    pub fn inverse(&self) -> QBWord {
        QBWord {
            n: self.n,
            factors: self.factors.iter().rev().copied().collect(),
        }
    }

    /// The automorphism `j_S`: every support reflected in `[1,n]`.
    pub fn j_s(&self) -> QBWord {
        QBWord {
            n: self.n,
            factors: self
                .factors
                .iter()
                .map(|t| t.reflect_full(self.n))
                .collect(),
        }
    }

    /// Views the same factors inside a larger ambient `m ≥ n`.
    pub fn widen(&self, m: usize) -> Result<QBWord> {
        if m < self.n {
            return Err(Error::AmbientMismatch(self.n, m));
        }
        QBWord::new(m, self.factors.clone())
    }

    /// The dyadic expansion homomorphism `J_n → J_{2n}`, generator-wise:
    /// `α_{[a,b]} ↦ α_{[2a−1,2b]} α_{(2a−1,2a)} ⋯ α_{(2b−1,2b)}`.
    pub fn expand(&self) -> QBWord {
        let mut factors = Vec::new();
        for t in &self.factors {
            factors.push(t.expand());
            for i in t.lo()..=t.hi() {
                factors.push(Interval::new(2 * i - 1, 2 * i).expect("caret"));
            }
        }
        QBWord {
            n: 2 * self.n,
            factors,
        }
    }

    /// One-leaf expansion at label `m`: factors are processed right to left,
    /// each support widened at the current label; a support containing the
    /// label gains the transposition of the two copies, and the label moves
    /// by the support reversal before the next factor.
    pub fn simple_expand(&self, m: usize) -> Result<QBWord> {
        if m == 0 || m > self.n {
            return Err(Error::LeafOutOfRange {
                index: m,
                count: self.n,
            });
        }
        let mut label = m;
        let mut slots: Vec<Vec<Interval>> = Vec::with_capacity(self.factors.len());
        for t in self.factors.iter().rev() {
            let mut slot = vec![t.simple_expand(label)];
            if t.contains_label(label) {
                slot.push(Interval::new(label, label + 1).expect("adjacent pair"));
                label = t.lo() + t.hi() - label;
            }
            slots.push(slot);
        }
        slots.reverse();
        Ok(QBWord {
            n: self.n + 1,
            factors: slots.concat(),
        })
    }

    /// Iterated dyadic expansion `J_n → J_{2^l n}`.
    pub fn wreath_embed_left(&self, l: usize) -> QBWord {
        let mut w = self.clone();
        for _ in 0..l {
            w = w.expand();
        }
        w
    }

    /// Block-diagonal embedding `J_n → J_{c·n}`: each generator becomes the
    /// product of its translates into the `c` blocks (the factors commute).
    pub fn wreath_embed_right(&self, copies: usize) -> QBWord {
        let mut factors = Vec::with_capacity(self.factors.len() * copies);
        for t in &self.factors {
            for block in 0..copies {
                factors.push(t.translate(block * self.n));
            }
        }
        QBWord {
            n: copies * self.n,
            factors,
        }
    }

    /// Per-support-size factor counts mod 2: invariant under all three
    /// relations, hence an invariant of the group element (the mod-2
    /// abelianization separated by the `j`-orbits of supports).
    pub fn size_parity_vector(&self) -> Vec<bool> {
        let mut v = vec![false; self.n + 1];
        for t in &self.factors {
            v[t.size()] ^= true;
        }
        v
    }
}

/// The chosen lift `α̂` of the longest element:
/// `α_{(1,2)} · (α_{(2,3)}α_{(1,2)}) · … · (α_{(n−1,n)}…α_{(1,2)})`.
pub fn alpha_hat(n: usize) -> QBWord {
    let mut factors = Vec::new();
    for k in 1..n {
        for i in (1..=k).rev() {
            factors.push(Interval::new(i, i + 1).expect("adjacent"));
        }
    }
    QBWord { n, factors }
}

/// A deterministic section of `φ`: factors the permutation into adjacent
/// transpositions by bubble sort.
pub fn section_word(perm: &Permutation) -> QBWord {
    let n = perm.size();
    let mut arr: Vec<usize> = perm.images().to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut done = true;
        for i in 0..n.saturating_sub(1) {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                swaps.push(Interval::new(i + 1, i + 2).expect("adjacent"));
                done = false;
            }
        }
        if done {
            break;
        }
    }
    swaps.reverse();
    QBWord { n, factors: swaps }
}

/// Relation tags of the presentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelTag {
    Square,
    Slide,
    Commute,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Forward,
    Backward,
}

/// One rewrite step at a 0-based factor position.
///
/// * `square` forward deletes the equal pair at `pos, pos+1`; backward
///   inserts the pair `α_T α_T` at `pos` and needs `support` to name `T`.
/// * `slide` forward turns `(α_T, α_{T'})` with `T' ⊆ T` into
///   `(α_{j_T T'}, α_T)`; backward is the inverse rewrite.
/// * `commute` swaps a label-disjoint pair (self-inverse).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Step {
    pub pos: usize,
    pub rel: RelTag,
    pub dir: Dir,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Interval>,
}

impl Step {
    pub fn square_del(pos: usize) -> Step {
        Step {
            pos,
            rel: RelTag::Square,
            dir: Dir::Forward,
            support: None,
        }
    }

    pub fn square_ins(pos: usize, support: Interval) -> Step {
        Step {
            pos,
            rel: RelTag::Square,
            dir: Dir::Backward,
            support: Some(support),
        }
    }

    pub fn slide_fwd(pos: usize) -> Step {
        Step {
            pos,
            rel: RelTag::Slide,
            dir: Dir::Forward,
            support: None,
        }
    }

    pub fn slide_back(pos: usize) -> Step {
        Step {
            pos,
            rel: RelTag::Slide,
            dir: Dir::Backward,
            support: None,
        }
    }

    pub fn commute(pos: usize) -> Step {
        Step {
            pos,
            rel: RelTag::Commute,
            dir: Dir::Forward,
            support: None,
        }
    }

    /// The step undoing this one.
    pub fn inverted(&self, word_before: &QBWord) -> Step {
        match (self.rel, self.dir) {
            (RelTag::Square, Dir::Forward) => {
                Step::square_ins(self.pos, word_before.factors[self.pos])
            }
            (RelTag::Square, Dir::Backward) => Step::square_del(self.pos),
            (RelTag::Slide, Dir::Forward) => Step::slide_back(self.pos),
            (RelTag::Slide, Dir::Backward) => Step::slide_fwd(self.pos),
            (RelTag::Commute, _) => Step::commute(self.pos),
        }
    }
}

/// A derivation is a sequence of rewrite steps.
pub type Derivation = Vec<Step>;

/// Applies one relation instance, validating applicability.
pub fn apply_step(word: &QBWord, step: &Step) -> Result<QBWord> {
    let bad = |reason: &str| Error::BadDerivationStep {
        step: step.pos,
        reason: reason.to_string(),
    };
    let mut factors = word.factors.clone();
    match (step.rel, step.dir) {
        (RelTag::Square, Dir::Forward) => {
            if step.pos + 1 >= factors.len() {
                return Err(bad("position out of range"));
            }
            if factors[step.pos] != factors[step.pos + 1] {
                return Err(bad("factors at pos, pos+1 are not equal"));
            }
            if let Some(s) = step.support {
                if s != factors[step.pos] {
                    return Err(bad("declared support does not match"));
                }
            }
            factors.drain(step.pos..step.pos + 2);
        }
        (RelTag::Square, Dir::Backward) => {
            let s = step
                .support
                .ok_or_else(|| bad("insertion needs a support"))?;
            if s.hi() > word.n {
                return Err(bad("support outside ambient"));
            }
            if step.pos > factors.len() {
                return Err(bad("position out of range"));
            }
            factors.splice(step.pos..step.pos, [s, s]);
        }
        (RelTag::Slide, Dir::Forward) => {
            if step.pos + 1 >= factors.len() {
                return Err(bad("position out of range"));
            }
            let (t, u) = (factors[step.pos], factors[step.pos + 1]);
            if !t.contains(&u) {
                return Err(bad("left support does not contain the right one"));
            }
            factors[step.pos] = u.conjugate_in(&t);
            factors[step.pos + 1] = t;
        }
        (RelTag::Slide, Dir::Backward) => {
            if step.pos + 1 >= factors.len() {
                return Err(bad("position out of range"));
            }
            let (x, t) = (factors[step.pos], factors[step.pos + 1]);
            if !t.contains(&x) {
                return Err(bad("right support does not contain the left one"));
            }
            factors[step.pos] = t;
            factors[step.pos + 1] = x.conjugate_in(&t);
        }
        (RelTag::Commute, _) => {
            if step.pos + 1 >= factors.len() {
                return Err(bad("position out of range"));
            }
            let (t, u) = (factors[step.pos], factors[step.pos + 1]);
            if !t.label_disjoint(&u) {
                return Err(bad("supports share a label"));
            }
            factors.swap(step.pos, step.pos + 1);
        }
    }
    Ok(QBWord { n: word.n, factors })
}

/// Validates a certificate that `d` rewrites `w1` into `w2`, checking that
/// `φ` and `ℓ` are preserved at every step.
pub fn words_equal_by_certificate(w1: &QBWord, w2: &QBWord, d: &Derivation) -> Result<bool> {
    if w1.ambient() != w2.ambient() {
        return Err(Error::AmbientMismatch(w1.ambient(), w2.ambient()));
    }
    let (phi0, len0) = (w1.phi(), w1.length());
    let mut cur = w1.clone();
    for (k, step) in d.iter().enumerate() {
        cur = apply_step(&cur, step).map_err(|e| Error::BadDerivationStep {
            step: k,
            reason: e.to_string(),
        })?;
        if cur.phi() != phi0 || cur.length() != len0 {
            return Err(Error::BadDerivationStep {
                step: k,
                reason: "step changed φ or ℓ".to_string(),
            });
        }
    }
    Ok(cur == *w2)
}

/// Reverses a derivation from `w1`, producing the certificate from the final
/// word back to `w1`.
pub fn invert_derivation(w1: &QBWord, d: &Derivation) -> Result<Derivation> {
    let mut words = vec![w1.clone()];
    for step in d {
        let next = apply_step(words.last().unwrap(), step)?;
        words.push(next);
    }
    let mut out = Vec::with_capacity(d.len());
    for (step, before) in d.iter().zip(&words).rev() {
        out.push(step.inverted(before));
    }
    Ok(out)
}

/// Shifts every position of a derivation by `offset` (for embedding a
/// certificate into a longer word).
pub fn offset_derivation(d: &Derivation, offset: usize) -> Derivation {
    d.iter()
        .map(|s| Step {
            pos: s.pos + offset,
            ..*s
        })
        .collect()
}

/// Outcome of the bounded word-problem search. No completeness is claimed:
/// `Unknown` only means the search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal(Derivation),
    Distinct(&'static str),
    Unknown,
}

fn neighbors(word: &QBWord) -> Vec<(Step, QBWord)> {
    let mut out = Vec::new();
    let f = &word.factors;
    for pos in 0..f.len().saturating_sub(1) {
        let (t, u) = (f[pos], f[pos + 1]);
        if t == u {
            let step = Step::square_del(pos);
            out.push((step, apply_step(word, &step).unwrap()));
        }
        if t.contains(&u) && t != u {
            let step = Step::slide_fwd(pos);
            out.push((step, apply_step(word, &step).unwrap()));
        }
        if u.contains(&t) && t != u {
            let step = Step::slide_back(pos);
            out.push((step, apply_step(word, &step).unwrap()));
        }
        if t.label_disjoint(&u) {
            let step = Step::commute(pos);
            out.push((step, apply_step(word, &step).unwrap()));
        }
    }
    out
}

/// Breadth-first bidirectional search over the non-inserting rewrites
/// (square deletion, slides, commutations), with invariant-based refutation.
pub fn bounded_equal(w1: &QBWord, w2: &QBWord, depth: usize) -> Result<Verdict> {
    if w1.ambient() != w2.ambient() {
        return Err(Error::AmbientMismatch(w1.ambient(), w2.ambient()));
    }
    if w1.phi() != w2.phi() {
        return Ok(Verdict::Distinct("φ-images differ"));
    }
    if w1.size_parity_vector() != w2.size_parity_vector() {
        return Ok(Verdict::Distinct("support-size parities differ"));
    }
    // parent maps: word -> (previous word, step applied to reach it)
    let mut from1: HashMap<QBWord, Option<(QBWord, Step)>> = HashMap::new();
    let mut from2: HashMap<QBWord, Option<(QBWord, Step)>> = HashMap::new();
    from1.insert(w1.clone(), None);
    from2.insert(w2.clone(), None);
    let mut q1 = VecDeque::from([(w1.clone(), 0usize)]);
    let mut q2 = VecDeque::from([(w2.clone(), 0usize)]);

    fn path_from(map: &HashMap<QBWord, Option<(QBWord, Step)>>, end: &QBWord) -> Derivation {
        let mut steps = Vec::new();
        let mut cur = end.clone();
        while let Some(Some((prev, step))) = map.get(&cur) {
            steps.push(*step);
            cur = prev.clone();
        }
        steps.reverse();
        steps
    }
    let meet = |m1: &HashMap<QBWord, Option<(QBWord, Step)>>,
                m2: &HashMap<QBWord, Option<(QBWord, Step)>>,
                at: &QBWord|
     -> Result<Derivation> {
        // w1 →…→ at, then the reverse of w2 →…→ at.
        let mut d = path_from(m1, at);
        let back = path_from(m2, at);
        d.extend(invert_derivation(w2, &back)?);
        Ok(d)
    };

    if from2.contains_key(w1) {
        return Ok(Verdict::Equal(meet(&from1, &from2, w1)?));
    }
    const NODE_CAP: usize = 200_000;
    loop {
        let mut progressed = false;
        for side in 0..2 {
            let (queue, own_is_first) = if side == 0 {
                (&mut q1, true)
            } else {
                (&mut q2, false)
            };
            let Some((word, d)) = queue.pop_front() else {
                continue;
            };
            progressed = true;
            if d >= depth {
                continue;
            }
            for (step, next) in neighbors(&word) {
                let (own, other) = if own_is_first {
                    (&mut from1, &mut from2)
                } else {
                    (&mut from2, &mut from1)
                };
                if own.contains_key(&next) {
                    continue;
                }
                own.insert(next.clone(), Some((word.clone(), step)));
                if other.contains_key(&next) {
                    return Ok(Verdict::Equal(meet(&from1, &from2, &next)?));
                }
                if from1.len() + from2.len() > NODE_CAP {
                    return Ok(Verdict::Unknown);
                }
                if own_is_first {
                    q1.push_back((next, d + 1));
                } else {
                    q2.push_back((next, d + 1));
                }
            }
        }
        if !progressed {
            break;
        }
    }
    Ok(Verdict::Unknown)
}

/// Words reachable from `w` in at most `radius` rewrite steps.
pub fn rewrite_ball(w: &QBWord, radius: usize) -> Vec<QBWord> {
    let mut seen: HashMap<QBWord, usize> = HashMap::new();
    seen.insert(w.clone(), 0);
    let mut queue = VecDeque::from([(w.clone(), 0usize)]);
    while let Some((word, d)) = queue.pop_front() {
        if d >= radius {
            continue;
        }
        for (_, next) in neighbors(&word) {
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), d + 1);
                queue.push_back((next, d + 1));
            }
        }
    }
    let mut out: Vec<QBWord> = seen.into_keys().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn word(n: usize, ivs: &[(usize, usize)]) -> QBWord {
        QBWord::new(n, ivs.iter().map(|&(a, b)| iv(a, b)).collect()).unwrap()
    }

    #[test]
    fn phi_of_single_transposition() {
        let w = word(2, &[(1, 2)]);
        assert_eq!(w.phi().images(), &[2, 1]);
        assert!(w.length());
    }

    #[test]
    fn phi_of_square_is_identity() {
        let w = word(5, &[(2, 4), (2, 4)]);
        assert!(w.is_pure());
        assert!(!w.length());
    }

    #[test]
    fn relations_preserve_length_exhaustively() {
        for n in 2..=8usize {
            for a in 1..n {
                for b in a + 1..=n {
                    let t = iv(a, b);
                    assert!(!word(n, &[(a, b), (a, b)]).length());
                    for c in 1..n {
                        for d in c + 1..=n {
                            let u = iv(c, d);
                            if t.contains(&u) {
                                let lhs = QBWord::new(n, vec![t, u]).unwrap();
                                let rhs = QBWord::new(n, vec![u.conjugate_in(&t), t]).unwrap();
                                assert_eq!(lhs.length(), rhs.length());
                                assert_eq!(lhs.phi(), rhs.phi());
                            }
                            if t.label_disjoint(&u) {
                                let lhs = QBWord::new(n, vec![t, u]).unwrap();
                                let rhs = QBWord::new(n, vec![u, t]).unwrap();
                                assert_eq!(lhs.length(), rhs.length());
                                assert_eq!(lhs.phi(), rhs.phi());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expand_generator_formula() {
        let w = word(2, &[(1, 2)]).expand();
        assert_eq!(w.factors(), &[iv(1, 4), iv(1, 2), iv(3, 4)]);
        assert!(w.length());
    }

    #[test]
    fn expand_preserves_length_and_projects() {
        let w = word(4, &[(1, 3), (2, 4), (1, 2)]);
        let e = w.expand();
        assert_eq!(e.length(), w.length());
        assert_eq!(e.phi(), w.phi().expand());
    }

    #[test]
    fn simple_expand_example() {
        // α_{[1,3]} expanded at 2 → α_{[1,4]} α_{(2,3)}.
        let w = word(3, &[(1, 3)]).simple_expand(2).unwrap();
        assert_eq!(w.factors(), &[iv(1, 4), iv(2, 3)]);
    }

    #[test]
    fn simple_expand_outside_supports_only_shifts() {
        let w = word(4, &[(3, 4)]).simple_expand(1).unwrap();
        assert_eq!(w.factors(), &[iv(4, 5)]);
    }

    #[test]
    fn simple_expand_projects_to_expanded_perm() {
        // The word-level rule projects onto the position-side duplication.
        let w = word(4, &[(1, 3), (2, 4), (3, 4), (1, 4)]);
        for m in 1..=4 {
            let e = w.simple_expand(m).unwrap();
            assert_eq!(
                e.phi(),
                w.phi().simple_expand_at_position(m).unwrap(),
                "leaf {m}"
            );
            assert_eq!(e.length(), w.length());
        }
    }

    #[test]
    fn alpha_hat_projects_to_longest_element() {
        for n in 2..=6 {
            let w = alpha_hat(n);
            assert_eq!(w.phi(), Permutation::full_reversal(n), "n = {n}");
            assert_eq!(w.length(), (n * (n - 1) / 2) % 2 == 1);
        }
        assert_eq!(alpha_hat(2).factors(), &[iv(1, 2)]);
    }

    #[test]
    fn section_word_is_a_section() {
        for perm in crate::strata::all_permutations(5) {
            assert_eq!(section_word(&perm).phi(), perm);
        }
    }

    #[test]
    fn certificate_square_cancel() {
        let w = word(3, &[(1, 2), (1, 2)]);
        let d = vec![Step::square_del(0)];
        assert!(words_equal_by_certificate(&w, &QBWord::identity(3), &d).unwrap());
    }

    #[test]
    fn certificate_slide_example() {
        // α_{[2,5]} α_{[2,3]} → α_{[4,5]} α_{[2,5]}.
        let w1 = word(6, &[(2, 5), (2, 3)]);
        let w2 = word(6, &[(4, 5), (2, 5)]);
        let d = vec![Step::slide_fwd(0)];
        assert!(words_equal_by_certificate(&w1, &w2, &d).unwrap());
    }

    #[test]
    fn certificate_rejects_bad_step() {
        let w = word(4, &[(1, 2), (2, 3)]);
        let d = vec![Step::commute(0)]; // shares label 2
        assert!(words_equal_by_certificate(&w, &w, &d).is_err());
    }

    #[test]
    fn empty_certificate_is_literal_equality() {
        let w = word(4, &[(1, 2)]);
        assert!(words_equal_by_certificate(&w, &w, &vec![]).unwrap());
        let other = word(4, &[(3, 4)]);
        assert!(!words_equal_by_certificate(&w, &other, &vec![]).unwrap());
    }

    #[test]
    fn commute_disjoint() {
        let w1 = word(4, &[(1, 2), (3, 4)]);
        let w2 = word(4, &[(3, 4), (1, 2)]);
        let d = vec![Step::commute(0)];
        assert!(words_equal_by_certificate(&w1, &w2, &d).unwrap());
    }

    #[test]
    fn bounded_equal_finds_square() {
        let w = word(3, &[(1, 3), (1, 3)]);
        match bounded_equal(&w, &QBWord::identity(3), 2).unwrap() {
            Verdict::Equal(d) => {
                assert!(words_equal_by_certificate(&w, &QBWord::identity(3), &d).unwrap())
            }
            other => panic!("expected Equal, got {other:?}"),
        }
    }

    #[test]
    fn bounded_equal_separates_by_phi() {
        let w1 = word(3, &[(1, 2)]);
        let w2 = word(3, &[(2, 3)]);
        assert_eq!(
            bounded_equal(&w1, &w2, 3).unwrap(),
            Verdict::Distinct("φ-images differ")
        );
    }

    #[test]
    fn bounded_equal_slide_pair() {
        let w1 = word(6, &[(2, 5), (2, 3)]);
        let w2 = word(6, &[(4, 5), (2, 5)]);
        match bounded_equal(&w1, &w2, 2).unwrap() {
            Verdict::Equal(d) => {
                assert!(!d.is_empty());
                assert!(words_equal_by_certificate(&w1, &w2, &d).unwrap());
            }
            other => panic!("expected Equal, got {other:?}"),
        }
    }

    #[test]
    fn bounded_equal_separates_by_size_parity() {
        // Same φ-image, different generator-size content: ω_{[1,3]} as one
        // generator versus its bubble factorization.
        let w1 = word(3, &[(1, 3)]);
        let w2 = word(3, &[(1, 2), (2, 3), (1, 2)]);
        assert_eq!(w1.phi(), w2.phi());
        assert_eq!(
            bounded_equal(&w1, &w2, 4).unwrap(),
            Verdict::Distinct("support-size parities differ")
        );
    }

    #[test]
    fn wreath_right_example() {
        // α_{[1,2]} from J₂ into J₈ over 4 blocks.
        let w = word(2, &[(1, 2)]).wreath_embed_right(4);
        assert_eq!(w.factors(), &[iv(1, 2), iv(3, 4), iv(5, 6), iv(7, 8)]);
        let p = w.phi();
        assert_eq!(p.images(), &[2, 1, 4, 3, 6, 5, 8, 7]);
    }

    #[test]
    fn size_parity_is_relation_invariant() {
        let t = iv(2, 5);
        let u = iv(3, 4);
        let lhs = word(6, &[(2, 5), (3, 4)]);
        let rhs = QBWord::new(6, vec![u.conjugate_in(&t), t]).unwrap();
        assert_eq!(lhs.size_parity_vector(), rhs.size_parity_vector());
    }

    #[test]
    fn rewrite_ball_contains_identity_neighbors() {
        let w = word(3, &[(1, 2), (1, 2)]);
        let ball = rewrite_ball(&w, 1);
        assert!(ball.contains(&QBWord::identity(3)));
    }
}
