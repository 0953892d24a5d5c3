//! Exact computations around orbifold fundamental groups of log Calabi–Yau
//! surface pairs.
//!
//! * [`curve`]: standard coefficients, the toric / elliptic / sporadic
//!   trichotomy for pairs on curves, complements and orbifold presentations.
//! * [`fp`]: finitely presented groups (coset enumeration, Smith normal form,
//!   Reidemeister–Schreier, permutation groups).
//! * [`nilpotent`]: Heisenberg-style groups `H_k`, their finite quotients and
//!   explicit finite-index subgroup constructions.
//! * [`toric`]: complete fans in the plane.
//! * [`fibration`]: coefficient bookkeeping for fibrations and covers, and the
//!   structure certificate table.
//! * [`suites`]: self-checking verification suites used by the CLI.

pub mod curve;
pub mod error;
pub mod fibration;
pub mod fp;
pub mod nilpotent;
pub mod rational;
pub mod suites;
pub mod toric;

pub use error::{Error, Result};
pub use rational::{format_rational, parse_rational, Q};

pub use curve::{
    abelianization_cover, classify_trichotomy, find_complement, orbifold_presentation,
    pair_degree, standard_approximation, ComplementCertificate, CurveDivisor, CurvePairClass,
    OrbifoldIndex, OrbifoldPresentation, StdCoeff,
};
pub use fp::{
    abelianization, coset_enumerate, free_reduce, regular_representation, verify_subgroup_claim,
    AbelianInvariants, CosetTable, PermGroup, Presentation, Word,
};
pub use nilpotent::{FiniteHeisenbergQuotient, HeisenbergElement, LatticeSubgroupDatum};
pub use toric::{BoundarySum, ConeReport, Fan2D, Ray, SurfaceId};
pub use fibration::{nori_certificate, StructureCertificate, SubgroupKind};
