//! Pairs `(C, Γ)` on a rational or elliptic curve with standard coefficients.

mod classify;
mod complement;
mod cover;
mod identify;
mod presentation;

pub use classify::{classify_trichotomy, enumerate_standard_pairs, CurvePairClass, EllipticFamily, PairKind};
pub use complement::{certificate_is_valid, find_complement, ComplementCertificate};
pub use cover::{abelianization_cover, cyclic_kernel_generators, elliptic_kernel, AbelianizationCover, EllipticKernel};
pub use identify::{identify_orbifold_group, GroupIdentification};
pub use presentation::{orbifold_presentation, OrbifoldPresentation};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, in_unit_interval, serde_q, Q};

/// Orbifold index `m` of a standard coefficient `1 - 1/m`; coefficient 1 is
/// the index [`OrbifoldIndex::Infinite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbifoldIndex {
    Finite(u64),
    Infinite,
}

impl OrbifoldIndex {
    pub fn finite(self) -> Option<u64> {
        match self {
            OrbifoldIndex::Finite(m) => Some(m),
            OrbifoldIndex::Infinite => None,
        }
    }
}

impl fmt::Display for OrbifoldIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbifoldIndex::Finite(m) => write!(f, "{m}"),
            OrbifoldIndex::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for OrbifoldIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrbifoldIndex::Finite(m) => s.serialize_u64(*m),
            OrbifoldIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OrbifoldIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(OrbifoldIndex::Infinite),
            serde_json::Value::Number(n) => match n.as_u64() {
                Some(m) if m >= 1 => Ok(OrbifoldIndex::Finite(m)),
                _ => Err(serde::de::Error::custom("orbifold index must be a positive integer")),
            },
            _ => Err(serde::de::Error::custom("orbifold index must be a positive integer or \"inf\"")),
        }
    }
}

/// A standard coefficient `1 - 1/m`, `m ∈ ℕ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StdCoeff {
    index: OrbifoldIndex,
}

impl StdCoeff {
    pub fn from_index(index: OrbifoldIndex) -> Result<Self> {
        if index == OrbifoldIndex::Finite(0) {
            return Err(Error::pre("orbifold index must be positive"));
        }
        Ok(StdCoeff { index })
    }

    pub fn finite(m: u64) -> Result<Self> {
        Self::from_index(OrbifoldIndex::Finite(m))
    }

    pub fn one() -> Self {
        StdCoeff { index: OrbifoldIndex::Infinite }
    }

    pub fn orbifold_index(&self) -> OrbifoldIndex {
        self.index
    }

    pub fn value(&self) -> Q {
        match self.index {
            OrbifoldIndex::Finite(m) => Q::one() - Q::new(BigInt::one(), BigInt::from(m)),
            OrbifoldIndex::Infinite => Q::one(),
        }
    }
}

impl Serialize for StdCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("StdCoeff", 2)?;
        st.serialize_field("orbifold_index", &self.index)?;
        st.serialize_field("value", &format_rational(&self.value()))?;
        st.end()
    }
}

/// Largest standard coefficient not exceeding `q`.
pub fn standard_approximation(q: &Q) -> Result<StdCoeff> {
    if !in_unit_interval(q) {
        return Err(Error::pre(format!("coefficient {} is outside [0,1]", format_rational(q))));
    }
    if q.is_one() {
        return Ok(StdCoeff::one());
    }
    // 1 - 1/m ≤ q  ⇔  m ≤ 1/(1-q)
    let m = (Q::one() / (Q::one() - q)).floor().to_integer();
    let m = m
        .to_u64()
        .ok_or_else(|| Error::pre("orbifold index does not fit in 64 bits"))?;
    StdCoeff::finite(m)
}

pub fn is_standard(q: &Q) -> bool {
    standard_approximation(q).is_ok_and(|s| s.value() == *q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub label: String,
    #[serde(with = "serde_q")]
    pub coeff: Q,
}

impl MarkedPoint {
    pub fn new(label: impl Into<String>, coeff: Q) -> Self {
        MarkedPoint { label: label.into(), coeff }
    }
}

/// Marked points with coefficients on `P^1` (genus 0) or an elliptic curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDivisor {
    pub genus: u8,
    pub points: Vec<MarkedPoint>,
}

impl CurveDivisor {
    pub fn new(genus: u8, points: Vec<MarkedPoint>) -> Result<Self> {
        let d = CurveDivisor { genus, points };
        d.validate()?;
        Ok(d)
    }

    /// Genus-0 divisor with labels `p1, p2, ...`.
    pub fn rational(coeffs: &[Q]) -> Result<Self> {
        Self::new(
            0,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| MarkedPoint::new(format!("p{}", i + 1), c.clone()))
                .collect(),
        )
    }

    /// Points may be `{"label", "coeff"}` objects or bare coefficients, which
    /// are labelled `p1, p2, ...` by position.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let mut v = v.clone();
        if let Some(points) = v.get_mut("points").and_then(serde_json::Value::as_array_mut) {
            for (i, p) in points.iter_mut().enumerate() {
                let coeff = match p {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => continue,
                };
                *p = serde_json::json!({ "label": format!("p{}", i + 1), "coeff": coeff });
            }
        }
        let d: CurveDivisor = serde_json::from_value(v)
            .map_err(|e| Error::parse(format!("curve divisor JSON: {e}")))?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus > 1 {
            return Err(Error::pre("only genus 0 and genus 1 curves are supported"));
        }
        for (i, p) in self.points.iter().enumerate() {
            if self.points[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::pre(format!("duplicate label {:?}", p.label)));
            }
            if !in_unit_interval(&p.coeff) {
                return Err(Error::pre(format!(
                    "coefficient {} at {:?} is outside [0,1]",
                    format_rational(&p.coeff),
                    p.label
                )));
            }
        }
        Ok(())
    }

    /// Drops zero-coefficient points; order is otherwise kept.
    pub fn canonical(&self) -> Self {
        CurveDivisor {
            genus: self.genus,
            points: self.points.iter().filter(|p| !p.coeff.is_zero()).cloned().collect(),
        }
    }

    pub fn coeffs(&self) -> Vec<Q> {
        self.points.iter().map(|p| p.coeff.clone()).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.points.iter().all(|p| is_standard(&p.coeff))
    }

    pub fn require_standard(&self) -> Result<()> {
        self.validate()?;
        match self.points.iter().find(|p| !is_standard(&p.coeff)) {
            Some(p) => Err(Error::pre(format!(
                "coefficient {} at {:?} is not standard",
                format_rational(&p.coeff),
                p.label
            ))),
            None => Ok(()),
        }
    }

    /// Orbifold indices of the nonzero points, in point order.
    pub fn indices(&self) -> Result<Vec<OrbifoldIndex>> {
        self.canonical()
            .points
            .iter()
            .map(|p| standard_approximation(&p.coeff).map(|s| s.orbifold_index()))
            .collect()
    }

    /// A label not already used, of the form `{stem}{k}`.
    pub(crate) fn fresh_label(&self, stem: &str, taken: &[String]) -> String {
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|l| !self.points.iter().any(|p| &p.label == l) && !taken.contains(l))
            .unwrap()
    }
}

/// `deg(K_C + Γ) = 2g - 2 + Σ coefficients`.
pub fn pair_degree(d: &CurveDivisor) -> Q {
    let base = Q::from_integer(BigInt::from(2 * d.genus as i64 - 2));
    d.points.iter().fold(base, |acc, p| acc + &p.coeff)
}

pub(crate) fn require_nonpositive(d: &CurveDivisor) -> Result<()> {
    let deg = pair_degree(d);
    if deg > Q::zero() {
        return Err(Error::pre(format!("pair degree {} is positive", format_rational(&deg))));
    }
    Ok(())
}
