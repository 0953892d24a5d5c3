use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complement::{find_complement, has_coeff_one, ComplementCertificate};
use super::{pair_degree, require_nonpositive, CurveDivisor, OrbifoldIndex, StdCoeff};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    Toric,
    Elliptic,
    Sporadic,
}

impl std::str::FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "toric" | "t" => Ok(PairKind::Toric),
            "elliptic" | "e" => Ok(PairKind::Elliptic),
            "sporadic" | "s" => Ok(PairKind::Sporadic),
            _ => Err(Error::parse(format!("unknown pair kind {s:?}"))),
        }
    }
}

/// The five Calabi–Yau configurations without a coefficient-1 point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EllipticFamily {
    #[serde(rename = "(E,0)")]
    EllipticCurve,
    #[serde(rename = "(1/2,1/2,1/2,1/2)")]
    Halves,
    #[serde(rename = "(2/3,2/3,2/3)")]
    Thirds,
    #[serde(rename = "(1/2,2/3,5/6)")]
    TwoThreeSix,
    #[serde(rename = "(1/2,3/4,3/4)")]
    TwoFourFour,
}

impl EllipticFamily {
    pub const ALL: [EllipticFamily; 5] = [
        EllipticFamily::EllipticCurve,
        EllipticFamily::Halves,
        EllipticFamily::Thirds,
        EllipticFamily::TwoThreeSix,
        EllipticFamily::TwoFourFour,
    ];

    /// Orbifold indices of the marked points on `P^1`; empty for `(E,0)`.
    pub fn indices(self) -> &'static [u64] {
        match self {
            EllipticFamily::EllipticCurve => &[],
            EllipticFamily::Halves => &[2, 2, 2, 2],
            EllipticFamily::Thirds => &[3, 3, 3],
            EllipticFamily::TwoThreeSix => &[2, 3, 6],
            EllipticFamily::TwoFourFour => &[2, 4, 4],
        }
    }

    /// Degree of the cyclic cover by an elliptic curve.
    pub fn cover_degree(self) -> u64 {
        match self {
            EllipticFamily::EllipticCurve => 1,
            EllipticFamily::Halves => 2,
            EllipticFamily::Thirds => 3,
            EllipticFamily::TwoThreeSix => 6,
            EllipticFamily::TwoFourFour => 4,
        }
    }

    pub fn divisor(self) -> CurveDivisor {
        if self == EllipticFamily::EllipticCurve {
            return CurveDivisor { genus: 1, points: vec![] };
        }
        let cs: Vec<Q> = self.indices().iter().map(|&m| StdCoeff::finite(m).unwrap().value()).collect();
        CurveDivisor::rational(&cs).unwrap()
    }

    fn from_indices(idx: &[u64]) -> Option<Self> {
        EllipticFamily::ALL
            .into_iter()
            .skip(1)
            .find(|f| f.indices() == idx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum CurvePairClass {
    Toric(ComplementCertificate),
    Elliptic(EllipticFamily),
    /// The triple `(2, 3, n)` of orbifold indices, `n ∈ {3, 4, 5}`.
    Sporadic([u64; 3]),
}

impl CurvePairClass {
    pub fn kind(&self) -> PairKind {
        match self {
            CurvePairClass::Toric(_) => PairKind::Toric,
            CurvePairClass::Elliptic(_) => PairKind::Elliptic,
            CurvePairClass::Sporadic(_) => PairKind::Sporadic,
        }
    }
}

/// Toric / elliptic / sporadic classification of a pair of non-positive degree
/// with standard coefficients.
pub fn classify_trichotomy(d: &CurveDivisor) -> Result<CurvePairClass> {
    d.require_standard()?;
    require_nonpositive(d)?;
    let d = d.canonical();
    if pair_degree(&d).is_zero() && !has_coeff_one(&d) {
        if d.genus == 1 {
            return Ok(CurvePairClass::Elliptic(EllipticFamily::EllipticCurve));
        }
        let idx = sorted_finite(&d)?;
        return EllipticFamily::from_indices(&idx)
            .map(CurvePairClass::Elliptic)
            .ok_or_else(|| Error::Verification(format!("degree-0 configuration {idx:?} matches no family")));
    }
    if let Some(c) = find_complement(&d, true)? {
        return Ok(CurvePairClass::Toric(c));
    }
    match sorted_finite(&d)?.as_slice() {
        &[2, 3, n] if (3..=5).contains(&n) => Ok(CurvePairClass::Sporadic([2, 3, n])),
        other => Err(Error::Verification(format!(
            "configuration {other:?} is neither toric, elliptic nor sporadic"
        ))),
    }
}

fn sorted_finite(d: &CurveDivisor) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for i in d.indices()? {
        match i {
            OrbifoldIndex::Finite(m) => out.push(m),
            OrbifoldIndex::Infinite => return Err(Error::Verification("unexpected coefficient 1".into())),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every genus-0 divisor with standard coefficients of denominator at most
/// `max_den` (coefficient 1 included) and degree ≤ 0, as non-decreasing
/// coefficient lists labelled `p1, p2, ...`.
pub fn enumerate_standard_pairs(max_den: u64) -> Vec<CurveDivisor> {
    let mut values: Vec<StdCoeff> = (2..=max_den).filter_map(|m| StdCoeff::finite(m).ok()).collect();
    values.push(StdCoeff::one());
    let mut out = Vec::new();
    let mut cur: Vec<Q> = Vec::new();
    extend(&values, 0, &mut cur, Q::zero(), &mut out);
    out
}

fn extend(values: &[StdCoeff], from: usize, cur: &mut Vec<Q>, sum: Q, out: &mut Vec<CurveDivisor>) {
    out.push(CurveDivisor::rational(cur).unwrap());
    let two = Q::from_integer(2.into());
    for (i, v) in values.iter().enumerate().skip(from) {
        let s = &sum + v.value();
        if s > two {
            // Values increase, so later ones overshoot as well.
            break;
        }
        cur.push(v.value());
        extend(values, i, cur, s, out);
        cur.pop();
    }
}
