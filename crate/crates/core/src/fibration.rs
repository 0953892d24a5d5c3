//! Coefficient bookkeeping for fibrations and cyclic covers, and the table of
//! structure certificates for fundamental groups of fibered pairs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::curve::{is_standard, standard_approximation, PairKind};
use crate::error::{Error, Result};
use crate::fp::Presentation;
use crate::nilpotent::{h_commutator, heisenberg_presentation, heisenberg_quotient_presentation, HeisenbergElement};
use crate::rational::{format_rational, in_unit_interval, serde_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    #[serde(with = "serde_q")]
    pub b: Q,
    pub multiplicity: u64,
}

/// A germ of orbifold index `m_P` meeting boundary components with
/// coefficients `b_j` and local multiplicities `m_{jP}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionPointDatum {
    pub m_p: u64,
    #[serde(default)]
    pub contributions: Vec<Contribution>,
}

impl AdjunctionPointDatum {
    pub fn validate(&self) -> Result<()> {
        if self.m_p == 0 {
            return Err(Error::pre("orbifold index must be at least 1"));
        }
        for c in &self.contributions {
            if !in_unit_interval(&c.b) {
                return Err(Error::pre(format!("coefficient {} is outside [0,1]", format_rational(&c.b))));
            }
            if c.multiplicity == 0 {
                return Err(Error::pre("multiplicities must be positive"));
            }
        }
        Ok(())
    }
}

/// `1 - 1/m_P + Σ m_{jP} b_j / m_P`.
pub fn adjunction_coefficient(d: &AdjunctionPointDatum) -> Result<Q> {
    d.validate()?;
    let m = Q::from_integer(BigInt::from(d.m_p));
    let sum: Q = d
        .contributions
        .iter()
        .map(|c| &c.b * Q::from_integer(BigInt::from(c.multiplicity)))
        .sum();
    Ok(Q::one() - m.recip() + sum / m)
}

/// A fiber of multiplicity `m` whose reduced support has coefficient `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationFiberDatum {
    pub m: u64,
    #[serde(with = "serde_q")]
    pub a: Q,
}

impl FibrationFiberDatum {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::pre("fiber multiplicity must be at least 1"));
        }
        if !is_standard(&self.a) {
            return Err(Error::pre(format!("coefficient {} is not standard", format_rational(&self.a))));
        }
        Ok(())
    }
}

/// `δ = 1 - (1 - a)/m`.
pub fn base_pair_coefficient(f: &FibrationFiberDatum) -> Result<Q> {
    f.validate()?;
    Ok(Q::one() - (Q::one() - &f.a) / Q::from_integer(BigInt::from(f.m)))
}

/// Ramification `m` over a point with coefficient `b`, coefficient `a` upstairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCoeffDatum {
    pub m: u64,
    #[serde(with = "serde_q")]
    pub b: Q,
    #[serde(with = "serde_q")]
    pub a: Q,
}

/// `m (1 - b^st) = 1 - a^st`.
pub fn check_compatible(c: &CoverCoeffDatum) -> Result<bool> {
    if c.m == 0 {
        return Err(Error::pre("ramification degree must be at least 1"));
    }
    let b = standard_approximation(&c.b)?.value();
    let a = standard_approximation(&c.a)?.value();
    Ok(Q::from_integer(BigInt::from(c.m)) * (Q::one() - b) == Q::one() - a)
}

/// `a = m b - (m - 1)`; an error when it leaves `[0,1]`.
pub fn ramification_pullback(b: &Q, m: u64) -> Result<Q> {
    if m == 0 {
        return Err(Error::pre("ramification degree must be at least 1"));
    }
    if !in_unit_interval(b) {
        return Err(Error::pre(format!("coefficient {} is outside [0,1]", format_rational(b))));
    }
    let m = Q::from_integer(BigInt::from(m));
    let a = &m * b - (m - Q::one());
    if !in_unit_interval(&a) {
        return Err(Error::pre(format!(
            "pullback coefficient {} is outside [0,1]; the cover datum is inconsistent",
            format_rational(&a)
        )));
    }
    Ok(a)
}

pub const CERTIFICATE_TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubgroupKind {
    Abelian { rank_bound: u8 },
    HeisenbergQuotient,
    /// Either abelian of bounded rank or a quotient of some `H_k`.
    AbelianOrHeisenbergQuotient { rank_bound: u8 },
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupKind::Abelian { rank_bound } => write!(f, "Abelian({rank_bound})"),
            SubgroupKind::HeisenbergQuotient => write!(f, "HeisenbergQuotient"),
            SubgroupKind::AbelianOrHeisenbergQuotient { rank_bound } => {
                write!(f, "AbelianOrHeisenbergQuotient({rank_bound})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub case_label: &'static str,
    /// `None` matches any class.
    pub fiber: Option<PairKind>,
    pub base: Option<PairKind>,
    /// The other class must not be elliptic.
    pub exclude_elliptic: bool,
    pub subgroup_kind: SubgroupKind,
    pub index_bound: u64,
    pub citation: &'static str,
}

/// Rows are tried in order; the first match wins.
pub const CERTIFICATE_TABLE: [CertificateRow; 5] = [
    CertificateRow {
        case_label: "elliptic-fiber/elliptic-base",
        fiber: Some(PairKind::Elliptic),
        base: Some(PairKind::Elliptic),
        exclude_elliptic: false,
        subgroup_kind: SubgroupKind::Abelian { rank_bound: 4 },
        index_bound: 3840,
        citation: "elliptic general fiber over an elliptic base pair: normal abelian subgroup of rank at most 4 and index at most 3840",
    },
    CertificateRow {
        case_label: "sporadic-fiber/elliptic-base",
        fiber: Some(PairKind::Sporadic),
        base: Some(PairKind::Elliptic),
        exclude_elliptic: false,
        subgroup_kind: SubgroupKind::Abelian { rank_bound: 2 },
        index_bound: 360,
        citation: "sporadic general fiber over an elliptic base pair: normal abelian subgroup of rank 2 and index at most 360",
    },
    CertificateRow {
        case_label: "toric-fiber/elliptic-base",
        fiber: Some(PairKind::Toric),
        base: Some(PairKind::Elliptic),
        exclude_elliptic: false,
        subgroup_kind: SubgroupKind::HeisenbergQuotient,
        index_bound: 864,
        citation: "toric general fiber over an elliptic base pair: normal subgroup of index at most 864 that is a quotient of a Heisenberg-style group H_k",
    },
    CertificateRow {
        case_label: "elliptic-fiber/non-elliptic-base",
        fiber: Some(PairKind::Elliptic),
        base: None,
        exclude_elliptic: true,
        subgroup_kind: SubgroupKind::AbelianOrHeisenbergQuotient { rank_bound: 4 },
        index_bound: 7200,
        citation: "elliptic general fiber over a toric or sporadic base pair: normal subgroup of index at most 7200, abelian of rank at most 4 or a quotient of some H_k",
    },
    CertificateRow {
        case_label: "non-elliptic-fiber/non-elliptic-base",
        fiber: None,
        base: None,
        exclude_elliptic: true,
        subgroup_kind: SubgroupKind::Abelian { rank_bound: 2 },
        index_bound: 7200,
        citation: "neither fiber nor base pair elliptic: abelian subgroup of rank at most 2 and index at most 7200, via residual finiteness of the fundamental group",
    },
];

impl CertificateRow {
    fn matches(&self, fiber: PairKind, base: PairKind) -> bool {
        let slot = |want: Option<PairKind>, got: PairKind| match want {
            Some(w) => w == got,
            None => !(self.exclude_elliptic && got == PairKind::Elliptic),
        };
        slot(self.fiber, fiber) && slot(self.base, base)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCertificate {
    pub table_version: u32,
    pub fiber: PairKind,
    pub base: PairKind,
    pub case_label: &'static str,
    pub subgroup_kind: SubgroupKind,
    pub index_bound: u64,
    pub citation: &'static str,
}

/// Conclusion shape and index bound for a fibration whose general fiber and
/// base pair fall in the given classes.
pub fn nori_certificate(fiber: PairKind, base: PairKind) -> StructureCertificate {
    let row = CERTIFICATE_TABLE
        .iter()
        .find(|r| r.matches(fiber, base))
        .expect("the table covers every pair of classes");
    StructureCertificate {
        table_version: CERTIFICATE_TABLE_VERSION,
        fiber,
        base,
        case_label: row.case_label,
        subgroup_kind: row.subgroup_kind,
        index_bound: row.index_bound,
        citation: row.citation,
    }
}

/// Orbifold fundamental group of the projectivized bundle with its two
/// sections as boundary, for a line bundle of degree `k`.
pub fn bundle_pi1(k: i64) -> Presentation {
    heisenberg_presentation(k)
}

pub fn bundle_quotient_pi1(k: i64, m: u64) -> Result<Presentation> {
    heisenberg_quotient_presentation(k, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyWitness {
    pub k: i64,
    /// `(x, y, [x, y])` for generator pairs, in normal form.
    pub commutators: Vec<(String, String, String)>,
    pub commutators_central: bool,
    pub class: u8,
}

/// Every commutator of generators is central, so the class is at most 2; it is
/// exactly 2 iff `k ≠ 0`.
pub fn bundle_nilpotency_witness(k: i64) -> Result<NilpotencyWitness> {
    let gens = [("a", HeisenbergElement::a(k)), ("b", HeisenbergElement::b(k)), ("c", HeisenbergElement::c(k))];
    let mut commutators = Vec::new();
    let mut central = true;
    let mut nontrivial = false;
    for (i, (ni, gi)) in gens.iter().enumerate() {
        for (nj, gj) in &gens[i + 1..] {
            let c = h_commutator(gi, gj)?;
            for (_, g) in &gens {
                central &= h_commutator(&c, g)?.is_identity();
            }
            nontrivial |= !c.is_identity();
            commutators.push((ni.to_string(), nj.to_string(), c.triple()));
        }
    }
    Ok(NilpotencyWitness { k, commutators, commutators_central: central, class: if nontrivial { 2 } else { 1 } })
}

/// Whether `δ` keeps coefficients standard for this datum.
pub fn delta_is_standard(f: &FibrationFiberDatum) -> Result<bool> {
    Ok(is_standard(&base_pair_coefficient(f)?))
}
