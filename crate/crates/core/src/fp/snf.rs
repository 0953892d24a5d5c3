//! Smith normal form over the integers and abelian invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::exponent_sums;

/// `torsion ⊕ ℤ^free_rank`, torsion given as invariant factors `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    #[serde(with = "crate::rational::serde_bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Least number of generators.
    pub fn rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    /// Order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).unwrap_or(u64::MAX))
            .collect()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero diagonal of the Smith normal form, positive and divisibility-sorted.
///
/// Pivot choice: least absolute value among the remaining entries, ties broken
/// by row-major position.
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let v = &a[t][j] * &f;
                        a[i][j] -= v;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &f;
                        row[j] -= v;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                let (pi, pj) = min_entry_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t`; the pivot itself is nonzero
/// or some remainder is, so this always succeeds when called.
fn min_entry_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best: Option<(usize, usize, BigInt)> = None;
    let mut consider = |i: usize, j: usize, x: &BigInt| {
        if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
            best = Some((i, j, x.abs()));
        }
    };
    for j in t..a[t].len() {
        consider(t, j, &a[t][j]);
    }
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        consider(i, t, &row[t]);
    }
    let (i, j, _) = best.expect("pivot cross has a nonzero entry");
    (i, j)
}

/// Abelian invariants of `ℤ^n / rowspace(matrix)`.
pub fn abelian_invariants_of_matrix(matrix: &[Vec<BigInt>], n: usize) -> AbelianInvariants {
    let diag = smith_diagonal(matrix);
    let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianInvariants { torsion, free_rank: n - diag.len() }
}

pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| {
            exponent_sums(r, p.generator_count())
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect()
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    abelian_invariants_of_matrix(&relation_matrix(p), p.generator_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_diagonals() {
        assert_eq!(smith_diagonal(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(smith_diagonal(&m(&[&[4, 0], &[0, 6]])), vec![BigInt::from(2), BigInt::from(12)]);
        assert!(smith_diagonal(&m(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn presentation_examples() {
        let bundle = Presentation::parse("<a,b,c | [a,b]c^-6, [a,c], [b,c]>").unwrap();
        let inv = abelianization(&bundle);
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        assert_eq!(inv.free_rank, 2);
        let cyc = abelianization(&Presentation::parse("<a | a^5>").unwrap());
        assert_eq!((cyc.torsion_u64(), cyc.free_rank), (vec![5], 0));
        let a5 = abelianization(&Presentation::parse("<x,y | x^2, y^3, (xy)^5>").unwrap());
        assert!(a5.is_trivial());
        assert_eq!(a5.to_string(), "1");
    }

    #[test]
    fn huge_entries_stay_exact() {
        let big = BigInt::from(u64::MAX) * BigInt::from(3u8);
        let d = smith_diagonal(&[vec![big.clone(), BigInt::zero()], vec![BigInt::zero(), BigInt::from(2)]]);
        assert_eq!(d, vec![BigInt::one(), big * BigInt::from(2)]);
    }

    proptest! {
        #[test]
        fn divisibility_chain_and_determinant(
            entries in prop::collection::vec(-9i64..=9, 9)
        ) {
            let a = m(&[&entries[0..3], &entries[3..6], &entries[6..9]]);
            let d = smith_diagonal(&a);
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let det = det3(&entries).abs();
            if d.len() == 3 {
                prop_assert_eq!(d.iter().product::<BigInt>(), BigInt::from(det));
            } else {
                prop_assert_eq!(det, 0);
            }
        }
    }

    fn det3(e: &[i64]) -> i64 {
        e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
            + e[2] * (e[3] * e[7] - e[4] * e[6])
    }
}
