use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::quotient::FiniteHeisenbergQuotient;
use crate::error::{Error, Result};

/// Subgroup of `G_{m,k}` generated by the center and `a^r0 b^r1` for each
/// basis row `(r0, r1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSubgroupDatum {
    pub basis: [[i64; 2]; 2],
    pub includes_center: bool,
}

impl LatticeSubgroupDatum {
    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.basis;
        a * d - b * c
    }

    /// Index in `G_{m,k}`; the full center is included.
    pub fn index(&self) -> u64 {
        self.det().unsigned_abs()
    }

    /// Whether `(x, y)` lies in the row lattice.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let [[a, b], [c, d]] = self.basis;
        let det = self.det();
        if det == 0 {
            return false;
        }
        // Solve (x, y) = s (a, b) + t (c, d) by Cramer's rule.
        let s = x * d - y * c;
        let t = a * y - b * x;
        s % det == 0 && t % det == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinIndexReport {
    pub m: u64,
    pub k: i64,
    pub index: u64,
    pub witness: LatticeSubgroupDatum,
    /// `⌈√(m/|k|)⌉`.
    pub lower_bound: u64,
    pub bases_examined: u64,
}

/// Smallest `l ≥ 0` with `l² |k| ≥ m`.
pub fn ceil_sqrt_ratio(m: u64, k: i64) -> u64 {
    let k = k.unsigned_abs() as u128;
    let m = m as u128;
    let mut l: u128 = ((m as f64 / k as f64).sqrt()) as u128;
    while l * l * k < m {
        l += 1;
    }
    while l > 0 && (l - 1) * (l - 1) * k >= m {
        l -= 1;
    }
    l as u64
}

/// Least index of an abelian subgroup of `G_{m,k}` containing the center,
/// over Hermite bases `[[d1, 0], [e, d2]]`, `0 ≤ e < d1`, `d1 d2 ≤ det_bound`,
/// taken by determinant, then `d1`, then `e`.
///
/// Commutativity is decided in normal-form arithmetic: the two lattice
/// generators commute iff their commutator is trivial in `G_{m,k}`.
pub fn min_abelian_normal_index(m: u64, k: i64, det_bound: u64) -> Result<MinIndexReport> {
    if k == 0 {
        return Err(Error::pre("k = 0 gives an abelian group; the bound degenerates"));
    }
    if m == 0 {
        return Err(Error::pre("m must be positive"));
    }
    if det_bound < m {
        return Err(Error::pre(format!("det_bound {det_bound} is below m = {m}")));
    }
    let g = FiniteHeisenbergQuotient::new(k, m)?;
    let mut examined = 0u64;
    for det in 1..=det_bound {
        for d1 in (1..=det).filter(|d| det % d == 0) {
            let d2 = det / d1;
            for e in 0..d1 {
                examined += 1;
                let u = g.element(BigInt::from(d1), 0, 0);
                let v = g.element(BigInt::from(e), BigInt::from(d2), 0);
                if g.commutator(&u, &v).is_identity() {
                    let witness = LatticeSubgroupDatum {
                        basis: [[d1 as i64, 0], [e as i64, d2 as i64]],
                        includes_center: true,
                    };
                    return Ok(MinIndexReport {
                        m,
                        k,
                        index: det,
                        witness,
                        lower_bound: ceil_sqrt_ratio(m, k),
                        bases_examined: examined,
                    });
                }
            }
        }
    }
    Err(Error::Budget(format!("no abelian sublattice with determinant at most {det_bound}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn examples() {
        let r = min_abelian_normal_index(4, 1, 16).unwrap();
        assert_eq!(r.index, 4);
        assert_eq!(r.witness.basis, [[1, 0], [0, 4]]);
        assert_eq!(min_abelian_normal_index(1, 1, 4).unwrap().index, 1);
        assert!(min_abelian_normal_index(9, 1, 36).unwrap().index >= 3);
        assert!(min_abelian_normal_index(4, 0, 16).is_err());
        assert!(min_abelian_normal_index(4, 1, 3).is_err());
    }

    #[test]
    fn matches_closed_form() {
        for m in 1..=30u64 {
            for k in [-3i64, -1, 1, 2, 3, 6] {
                let r = min_abelian_normal_index(m, k, 4 * m).unwrap();
                assert_eq!(r.index, m / m.gcd(&k.unsigned_abs()), "m={m} k={k}");
                assert!(r.index >= ceil_sqrt_ratio(m, k));
            }
        }
    }

    #[test]
    fn sqrt_bound() {
        assert_eq!(ceil_sqrt_ratio(9, 1), 3);
        assert_eq!(ceil_sqrt_ratio(10, 1), 4);
        assert_eq!(ceil_sqrt_ratio(36, 3), 4);
        assert_eq!(ceil_sqrt_ratio(1, 5), 1);
    }

    #[test]
    fn witness_is_normal() {
        for (m, k) in [(4u64, 1i64), (12, 2), (27, 3), (35, 1)] {
            let r = min_abelian_normal_index(m, k, 4 * m).unwrap();
            let g = FiniteHeisenbergQuotient::new(k, m).unwrap();
            let gens: Vec<_> = r.witness.basis.iter().map(|row| g.element(row[0], row[1], 0)).collect();
            for by in [g.element(1, 0, 0), g.element(0, 1, 0), g.element(-1, 0, 0), g.element(0, -1, 0)] {
                for h in &gens {
                    let c = g.conjugate(h, &by);
                    let (x, y) = (i64::try_from(&c.x).unwrap(), i64::try_from(&c.y).unwrap());
                    assert!(r.witness.contains(x, y));
                }
            }
        }
    }

    #[test]
    fn adjoining_the_center_keeps_commuting_pairs_commuting() {
        // Any commuting pair u, v together with c still commutes pairwise, and
        // the subgroup ⟨u, v, c⟩ has index at most that of ⟨u, v⟩.
        let g = FiniteHeisenbergQuotient::new(2, 6).unwrap();
        let c = g.element(0, 0, 1);
        let range = -3i64..=3;
        for x1 in range.clone() {
            for y1 in range.clone() {
                for x2 in range.clone() {
                    for y2 in range.clone() {
                        let u = g.element(x1, y1, 0);
                        let v = g.element(x2, y2, 1);
                        if g.commutator(&u, &v).is_identity() {
                            assert!(g.commutator(&u, &c).is_identity());
                            assert!(g.commutator(&v, &c).is_identity());
                        }
                    }
                }
            }
        }
    }
}
