use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{pair_degree, require_nonpositive, CurveDivisor, MarkedPoint};
use crate::error::Result;
use crate::rational::{ceil_to_grid, Q};

/// An `N`-complement `Γ+ ≥ Γ` with `N Γ+` integral and `deg(K_C + Γ+) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCertificate {
    #[serde(rename = "N")]
    pub n: u64,
    pub gamma_plus: CurveDivisor,
}

/// Search order for `N`: `1, 2, 3, 4, 6` and every divisor of the lcm of the
/// input denominators up to 60, ascending.
fn candidate_ns(d: &CurveDivisor) -> Vec<u64> {
    let l = d
        .points
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.coeff.denom()));
    let mut set: BTreeSet<u64> = [1, 2, 3, 4, 6].into_iter().collect();
    for k in 1..=60u64 {
        if (&l % BigInt::from(k)).is_zero() {
            set.insert(k);
        }
    }
    set.into_iter().collect()
}

/// Smallest-`N` complement under the search order above.
///
/// With `require_coeff_one`, the point with the largest rounded coefficient
/// (first on ties) is raised to 1, or a new point of coefficient 1 is added
/// when there are no points. The remaining deficit is filled by new points of
/// coefficient 1 followed by at most one point of smaller coefficient.
pub fn find_complement(d: &CurveDivisor, require_coeff_one: bool) -> Result<Option<ComplementCertificate>> {
    d.require_standard()?;
    require_nonpositive(d)?;
    let d = d.canonical();
    if d.genus == 1 {
        // Degree ≤ 0 forces Γ = 0, and any coefficient-1 point would make it positive.
        return Ok((!require_coeff_one).then(|| ComplementCertificate { n: 1, gamma_plus: d.clone() }));
    }
    let two = Q::from_integer(BigInt::from(2));
    for n in candidate_ns(&d) {
        let mut coeffs: Vec<Q> = d.points.iter().map(|p| ceil_to_grid(&p.coeff, n)).collect();
        let mut new_points: Vec<Q> = Vec::new();
        if require_coeff_one {
            match argmax(&coeffs) {
                Some(i) => coeffs[i] = Q::one(),
                None => new_points.push(Q::one()),
            }
        }
        let total: Q = coeffs.iter().chain(&new_points).fold(Q::zero(), |a, c| a + c);
        if total > two {
            continue;
        }
        let mut deficit = two.clone() - total;
        while deficit >= Q::one() {
            new_points.push(Q::one());
            deficit -= Q::one();
        }
        if !deficit.is_zero() {
            new_points.push(deficit);
        }
        let mut points: Vec<MarkedPoint> = d
            .points
            .iter()
            .zip(coeffs)
            .map(|(p, c)| MarkedPoint::new(p.label.clone(), c))
            .collect();
        let mut taken = Vec::new();
        for c in new_points {
            let label = d.fresh_label("q", &taken);
            taken.push(label.clone());
            points.push(MarkedPoint::new(label, c));
        }
        let gamma_plus = CurveDivisor { genus: 0, points };
        return Ok(Some(ComplementCertificate { n, gamma_plus }));
    }
    Ok(None)
}

fn argmax(xs: &[Q]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in xs.iter().enumerate() {
        if best.is_none_or(|b| *x > xs[b]) {
            best = Some(i);
        }
    }
    best
}

/// Checks every defining property of a complement of `d`.
pub fn certificate_is_valid(d: &CurveDivisor, cert: &ComplementCertificate) -> bool {
    let g = &cert.gamma_plus;
    let n = Q::from_integer(BigInt::from(cert.n));
    cert.n >= 1
        && g.genus == d.genus
        && g.validate().is_ok()
        && pair_degree(g).is_zero()
        && g.points.iter().all(|p| (&p.coeff * &n).is_integer())
        && d.canonical().points.iter().all(|p| {
            g.points
                .iter()
                .find(|q| q.label == p.label)
                .is_some_and(|q| q.coeff >= p.coeff)
        })
}

pub(crate) fn has_coeff_one(d: &CurveDivisor) -> bool {
    d.points.iter().any(|p| p.coeff.is_one())
}
