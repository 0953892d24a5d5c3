//! Finitely presented groups: words, presentations, coset enumeration,
//! abelianization, subgroup rewriting and permutation-group analysis.

pub mod coset;
pub mod perm;
pub mod presentation;
pub mod schreier;
pub mod snf;
pub mod word;

pub use coset::{coset_enumerate, CosetTable, EnumerationStatus, DEFAULT_MAX_COSETS};
pub use perm::{regular_representation, GroupAnalysis, PermGroup, DEFAULT_ORDER_BOUND};
pub use presentation::Presentation;
pub use schreier::{reidemeister_schreier, subgroup_report, verify_subgroup_claim, SubgroupPresentation, SubgroupReport};
pub use snf::{abelianization, AbelianInvariants};
pub use word::{free_reduce, Word};
