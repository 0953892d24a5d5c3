//! Heisenberg-style groups `H_k = ⟨a,b,c | [a,b] = c^k, c central⟩`.
//!
//! Elements are normal forms `a^x b^y c^z` with `c` the central generator.
//! Under the relabelling `c ↦ a, a ↦ b, b ↦ c` this is the presentation with a
//! central first generator and `[b,c] = a^k`.

pub mod gadgets;
mod heisenberg;
mod lattice;
mod quotient;
pub mod rewriting;

pub use heisenberg::{
    h_commutator, h_mul, heisenberg_presentation, heisenberg_quotient_presentation,
    is_virtually_abelian, HeisenbergElement, NonAbelianWitness, VirtualAbelianity,
};
pub use lattice::{ceil_sqrt_ratio, min_abelian_normal_index, LatticeSubgroupDatum, MinIndexReport};
pub use quotient::{FiniteHeisenbergQuotient, QuotientElement};
