//! Exact combinatorics of the real genus-zero moduli tower.
//!
//! The crate models the cell structure of the spaces `M~_{0,n+1}(R)` (the
//! two-sheeted cover of the compactified real moduli space of stable genus-zero
//! curves) and `M¯_{0,n+1}(R)` itself, together with the groups that act on
//! their dyadic towers:
//!
//! * [`tree`] / [`interval`] — planar trees, leaf-label intervals, nested
//!   collections and the reflection moves that identify strata;
//! * [`strata`] — the stratum poset, cell complex construction, and mod-2
//!   cellular homology (see [`homology`]);
//! * [`thompson`], [`automaton`], [`neretin`], [`cyclic`] — tree-pair symbol
//!   arithmetic for Thompson's groups `F ⊂ T ⊂ V` and Neretin's spheromorphism
//!   group `N`, in rooted and cyclic (unrooted) variants;
//! * [`quasibraid`] — words in the quasi-braid groups `J_n`, the parity length
//!   homomorphism, expansion homomorphisms, and derivation certificates;
//! * [`tower`] — stable cells of the dyadic towers and the group action on them;
//! * [`euler`] — lifted symbols, the ring `R` of bit sequences modulo finite
//!   noise, the stable length sequence, and the Euler 2-cocycle.
//!
//! All values are immutable and all operations are pure functions, so
//! everything here can be shared freely across threads.

pub mod automaton;
pub mod cyclic;
pub mod error;
pub mod euler;
pub mod homology;
pub mod interval;
pub mod neretin;
pub mod perm;
pub mod quasibraid;
pub mod rclass;
pub mod sample;
pub mod strata;
pub mod thompson;
pub mod tower;
pub mod tree;
pub mod ugraph;
pub mod unrooted;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book_doctests {
    //! Runs every Rust snippet in the mdbook guide under `cargo test --doc`.
    #![doc = include_str!("../../../book/src/introduction.md")]
    #[doc = include_str!("../../../book/src/trees-and-strata.md")]
    mod trees_and_strata {}
    #[doc = include_str!("../../../book/src/moduli-complexes.md")]
    mod moduli_complexes {}
    #[doc = include_str!("../../../book/src/thompson-neretin.md")]
    mod thompson_neretin {}
    #[doc = include_str!("../../../book/src/quasi-braids.md")]
    mod quasi_braids {}
    #[doc = include_str!("../../../book/src/tower-action.md")]
    mod tower_action {}
    #[doc = include_str!("../../../book/src/euler-class.md")]
    mod euler_class {}
}
