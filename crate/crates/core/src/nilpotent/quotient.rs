use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::heisenberg::HeisenbergElement;
use crate::error::{Error, Result};
use crate::rational::serde_bigint;

/// `G_{m,k} = H_k / ⟨c^m⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteHeisenbergQuotient {
    pub k: i64,
    pub m: u64,
}

/// `a^x b^y c^z` with `0 ≤ z < m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientElement {
    #[serde(with = "serde_bigint")]
    pub x: BigInt,
    #[serde(with = "serde_bigint")]
    pub y: BigInt,
    #[serde(with = "serde_bigint")]
    pub z: BigInt,
}

impl QuotientElement {
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn triple(&self) -> String {
        format!("{},{},{}", self.x, self.y, self.z)
    }
}

impl FiniteHeisenbergQuotient {
    pub fn new(k: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::pre("m must be positive"));
        }
        Ok(FiniteHeisenbergQuotient { k, m })
    }

    fn reduce(&self, z: BigInt) -> BigInt {
        z.mod_floor(&BigInt::from(self.m))
    }

    pub fn element(&self, x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> QuotientElement {
        QuotientElement { x: x.into(), y: y.into(), z: self.reduce(z.into()) }
    }

    pub fn identity(&self) -> QuotientElement {
        self.element(0, 0, 0)
    }

    pub fn project(&self, u: &HeisenbergElement) -> Result<QuotientElement> {
        if u.k != self.k {
            return Err(Error::pre("element parameter does not match the quotient"));
        }
        Ok(self.element(u.x.clone(), u.y.clone(), u.z.clone()))
    }

    pub fn mul(&self, u: &QuotientElement, v: &QuotientElement) -> QuotientElement {
        let twist = BigInt::from(self.k) * &v.x * &u.y;
        QuotientElement {
            x: &u.x + &v.x,
            y: &u.y + &v.y,
            z: self.reduce(&u.z + &v.z - twist),
        }
    }

    pub fn inverse(&self, u: &QuotientElement) -> QuotientElement {
        let kxy = BigInt::from(self.k) * &u.x * &u.y;
        QuotientElement { x: -&u.x, y: -&u.y, z: self.reduce(-&u.z - kxy) }
    }

    pub fn commutator(&self, u: &QuotientElement, v: &QuotientElement) -> QuotientElement {
        let uv = self.mul(u, v);
        self.mul(&self.mul(&uv, &self.inverse(u)), &self.inverse(v))
    }

    pub fn conjugate(&self, g: &QuotientElement, by: &QuotientElement) -> QuotientElement {
        self.mul(&self.mul(by, g), &self.inverse(by))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::h_mul;
    use proptest::prelude::*;

    #[test]
    fn c_has_order_m() {
        let g = FiniteHeisenbergQuotient::new(3, 5).unwrap();
        let c = g.element(0, 0, 1);
        let mut acc = g.identity();
        for i in 1..=5 {
            acc = g.mul(&acc, &c);
            assert_eq!(acc.is_identity(), i == 5);
        }
        assert!(FiniteHeisenbergQuotient::new(1, 0).is_err());
    }

    #[test]
    fn commutator_reduced() {
        // [a^2, b^2] = c^8 = 1 in G_{8,2}.
        let g = FiniteHeisenbergQuotient::new(2, 8).unwrap();
        assert!(g.commutator(&g.element(2, 0, 0), &g.element(0, 2, 0)).is_identity());
        let g = FiniteHeisenbergQuotient::new(2, 9).unwrap();
        assert_eq!(g.commutator(&g.element(2, 0, 0), &g.element(0, 2, 0)).z, BigInt::from(8));
    }

    proptest! {
        #[test]
        fn projection_is_a_homomorphism(
            k in -5i64..=5, m in 1u64..=40,
            c in prop::array::uniform6(-200i64..=200)
        ) {
            let g = FiniteHeisenbergQuotient::new(k, m).unwrap();
            let u = HeisenbergElement::new(k, c[0], c[1], c[2]);
            let v = HeisenbergElement::new(k, c[3], c[4], c[5]);
            let lhs = g.project(&h_mul(&u, &v).unwrap()).unwrap();
            let rhs = g.mul(&g.project(&u).unwrap(), &g.project(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
