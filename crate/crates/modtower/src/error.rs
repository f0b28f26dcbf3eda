//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by validation and by operations with unsatisfiable inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid interval [{lo},{hi}]: need 1 <= lo < hi")]
    InvalidInterval { lo: usize, hi: usize },
    #[error("interval [{lo},{hi}] does not fit in ambient size {n}")]
    IntervalOutOfRange { lo: usize, hi: usize, n: usize },
    #[error("interval [{lo},{hi}] is the full interval; proper intervals required here")]
    ImproperInterval { lo: usize, hi: usize },
    #[error("collection is not nested: [{a_lo},{a_hi}] and [{b_lo},{b_hi}] overlap")]
    NotNested {
        a_lo: usize,
        a_hi: usize,
        b_lo: usize,
        b_hi: usize,
    },
    #[error("not a permutation image array: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("ambient size mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vertex with leaf span [{lo},{hi}] is not a vertex of the tree")]
    NoSuchVertex { lo: usize, hi: usize },
    #[error("the tree has no internal edge")]
    NoInternalEdge,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("leaf index {index} out of range 1..={count}")]
    LeafOutOfRange { index: usize, count: usize },
    #[error("complex size {n} outside supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("derivation step {step} cannot be applied: {reason}")]
    BadDerivationStep { step: usize, reason: String },
    #[error("lifted symbol invariant violated: word does not project onto the leaf map")]
    LiftInvariant,
    #[error("relation does not hold in N: product of commutators is not the identity")]
    RelationFails,
    #[error("group/cell variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("sequence did not become periodic within {0} steps")]
    PeriodNotFound(usize),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
