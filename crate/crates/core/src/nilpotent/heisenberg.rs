use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::word::{commutator, power};
use crate::fp::Presentation;
use crate::rational::serde_bigint;

/// `a^x b^y c^z` in `H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub k: i64,
    #[serde(with = "serde_bigint")]
    pub x: BigInt,
    #[serde(with = "serde_bigint")]
    pub y: BigInt,
    #[serde(with = "serde_bigint")]
    pub z: BigInt,
}

impl HeisenbergElement {
    pub fn new(k: i64, x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        HeisenbergElement { k, x: x.into(), y: y.into(), z: z.into() }
    }

    pub fn identity(k: i64) -> Self {
        Self::new(k, 0, 0, 0)
    }

    pub fn a(k: i64) -> Self {
        Self::new(k, 1, 0, 0)
    }

    pub fn b(k: i64) -> Self {
        Self::new(k, 0, 1, 0)
    }

    pub fn c(k: i64) -> Self {
        Self::new(k, 0, 0, 1)
    }

    /// Parses `"x,y,z"`.
    pub fn parse(k: i64, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(format!("expected x,y,z but got {s:?}")));
        }
        let mut v = Vec::with_capacity(3);
        for p in parts {
            v.push(
                p.parse::<BigInt>()
                    .map_err(|_| Error::parse(format!("bad integer {p:?} in {s:?}")))?,
            );
        }
        let z = v.pop().unwrap();
        let y = v.pop().unwrap();
        let x = v.pop().unwrap();
        Ok(HeisenbergElement { k, x, y, z })
    }

    pub fn triple(&self) -> String {
        format!("{},{},{}", self.x, self.y, self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn inverse(&self) -> Self {
        let kxy = BigInt::from(self.k) * &self.x * &self.y;
        HeisenbergElement { k: self.k, x: -&self.x, y: -&self.y, z: -&self.z - kxy }
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity(self.k);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_unchecked(&acc, &base);
            }
            base = mul_unchecked(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Evaluates a word over `a = 1, b = 2, c = 3` (signed).
    pub fn from_word(k: i64, w: &[i32]) -> Result<Self> {
        let mut acc = Self::identity(k);
        for &x in w {
            let g = match x.abs() {
                1 => Self::a(k),
                2 => Self::b(k),
                3 => Self::c(k),
                _ => return Err(Error::pre(format!("letter {x} is not one of a, b, c"))),
            };
            let g = if x < 0 { g.inverse() } else { g };
            acc = mul_unchecked(&acc, &g);
        }
        Ok(acc)
    }
}

fn same_k(u: &HeisenbergElement, v: &HeisenbergElement) -> Result<()> {
    if u.k != v.k {
        return Err(Error::pre(format!("elements of H_{} and H_{} cannot be combined", u.k, v.k)));
    }
    Ok(())
}

pub(crate) fn mul_unchecked(u: &HeisenbergElement, v: &HeisenbergElement) -> HeisenbergElement {
    // b^y1 a^x2 = a^x2 b^y1 c^(-k x2 y1)
    let twist = BigInt::from(u.k) * &v.x * &u.y;
    HeisenbergElement {
        k: u.k,
        x: &u.x + &v.x,
        y: &u.y + &v.y,
        z: &u.z + &v.z - twist,
    }
}

/// `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2 - k x2 y1)`.
pub fn h_mul(u: &HeisenbergElement, v: &HeisenbergElement) -> Result<HeisenbergElement> {
    same_k(u, v)?;
    Ok(mul_unchecked(u, v))
}

/// `u v u^-1 v^-1`, computed through the multiplication law.
pub fn h_commutator(u: &HeisenbergElement, v: &HeisenbergElement) -> Result<HeisenbergElement> {
    same_k(u, v)?;
    let uv = mul_unchecked(u, v);
    Ok(mul_unchecked(&mul_unchecked(&uv, &u.inverse()), &v.inverse()))
}

/// `⟨a,b,c | [a,b]c^-k, [a,c], [b,c]⟩`.
pub fn heisenberg_presentation(k: i64) -> Presentation {
    let first = [commutator(&[1], &[2]), power(&[3], -k)].concat();
    Presentation::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![first, commutator(&[1], &[3]), commutator(&[2], &[3])],
    )
    .expect("well-formed presentation")
}

/// The previous presentation with `c^m` added.
pub fn heisenberg_quotient_presentation(k: i64, m: u64) -> Result<Presentation> {
    if m == 0 {
        return Err(Error::pre("m must be positive"));
    }
    let mut p = heisenberg_presentation(k);
    p.relators.push(power(&[3], m as i64));
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAbelianWitness {
    pub statement: String,
    /// `(l, k l^2)`: the exponent of `c` in `[a^l, b^l]`.
    pub samples: Vec<(i64, String)>,
    pub argument: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualAbelianity {
    pub k: i64,
    pub virtually_abelian: bool,
    pub witness: Option<NonAbelianWitness>,
}

/// `H_k` is virtually abelian iff `k = 0`.
///
/// For `k ≠ 0`, a subgroup of index `m` contains `a^l` and `b^l` for some
/// `1 ≤ l ≤ m`, and their commutator `c^(k l^2)` is nontrivial.
pub fn is_virtually_abelian(k: i64) -> VirtualAbelianity {
    if k == 0 {
        return VirtualAbelianity { k, virtually_abelian: true, witness: None };
    }
    let samples = (1..=6)
        .map(|l| {
            let com = mul_commutator_power(k, l);
            debug_assert!(!com.z.is_zero());
            (l, com.z.to_string())
        })
        .collect();
    VirtualAbelianity {
        k,
        virtually_abelian: false,
        witness: Some(NonAbelianWitness {
            statement: format!("[a^l,b^l] = c^({k}*l^2) != 1 for every l >= 1"),
            samples,
            argument: "a finite-index subgroup A of index m contains a^l and b^l for some 1 <= l <= m; \
                       if A were abelian then c^(k l^2) = 1, but c has infinite order"
                .into(),
        }),
    }
}

fn mul_commutator_power(k: i64, l: i64) -> HeisenbergElement {
    let u = HeisenbergElement::a(k).pow(l);
    let v = HeisenbergElement::b(k).pow(l);
    h_commutator(&u, &v).unwrap()
}
