use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::{det, hirzebruch_fan, p123_fan, p2_fan, weighted_p11n_fan, Fan2D, Ray};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceId {
    P2,
    /// `P(1,1,n)`, `n ≥ 2`.
    P11n(u64),
    P123,
    /// Hirzebruch surface `Σ_n`.
    Sigma(u64),
    Unrecognized,
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceId::P2 => write!(f, "P2"),
            SurfaceId::P11n(n) => write!(f, "P(1,1,{n})"),
            SurfaceId::P123 => write!(f, "P(1,2,3)"),
            SurfaceId::Sigma(n) => write!(f, "Sigma_{n}"),
            SurfaceId::Unrecognized => write!(f, "Unrecognized"),
        }
    }
}

impl Serialize for SurfaceId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Image of a ray sequence under the unique `g ∈ GL2(ℤ)` sending the first
/// ray to `(1,0)` and the second to `(x, n)` with `n > 0`, `0 ≤ x < n`.
fn normalize_sequence(seq: &[Ray]) -> Vec<Ray> {
    let (a, b) = seq[0];
    let e = a.extended_gcd(&b);
    let (p, r) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    let g0 = |v: Ray| (p * v.0 + r * v.1, -b * v.0 + a * v.1);
    let mut img: Vec<Ray> = seq.iter().map(|&v| g0(v)).collect();
    if img[1].1 < 0 {
        img.iter_mut().for_each(|v| v.1 = -v.1);
    }
    let (x, n) = img[1];
    let t = (x.rem_euclid(n) - x) / n;
    img.iter_mut().map(|v| (v.0 + t * v.1, v.1)).collect()
}

/// Lexicographically least normalization over all starting rays and both
/// orientations; two fans are lattice equivalent iff these agree.
pub fn normal_form(f: &Fan2D) -> Vec<Ray> {
    let r = f.len();
    let mut best: Option<Vec<Ray>> = None;
    for start in 0..r {
        for dir in [1isize, -1] {
            let seq: Vec<Ray> = (0..r as isize)
                .map(|j| f.rays()[(start as isize + dir * j).rem_euclid(r as isize) as usize])
                .collect();
            let nf = normalize_sequence(&seq);
            if best.as_ref().is_none_or(|b| nf < *b) {
                best = Some(nf);
            }
        }
    }
    best.expect("fans have rays")
}

fn candidate(f: &Fan2D) -> Option<(SurfaceId, Fan2D)> {
    let rays = f.rays();
    match rays.len() {
        3 => {
            let lattice = det(rays[0], rays[1]).gcd(&det(rays[1], rays[2])).gcd(&det(rays[2], rays[0]));
            if lattice != 1 {
                return None;
            }
            let mut w: Vec<i64> = (0..3).map(|i| det(rays[(i + 1) % 3], rays[(i + 2) % 3])).collect();
            let g = w[0].gcd(&w[1]).gcd(&w[2]);
            w.iter_mut().for_each(|x| *x /= g);
            w.sort();
            match w[..] {
                [1, 1, 1] => Some((SurfaceId::P2, p2_fan())),
                [1, 1, n] => Some((SurfaceId::P11n(n as u64), weighted_p11n_fan(n).ok()?)),
                [1, 2, 3] => Some((SurfaceId::P123, p123_fan())),
                _ => None,
            }
        }
        4 if f.is_smooth() => {
            let n = (0..4).map(|i| f.smooth_self_intersection(i).abs()).max()?;
            Some((SurfaceId::Sigma(n as u64), hirzebruch_fan(n).ok()?))
        }
        _ => None,
    }
}

/// Names `P²`, `P(1,1,n)`, `P(1,2,3)` and `Σ_n` up to lattice equivalence.
pub fn recognize(f: &Fan2D) -> SurfaceId {
    match candidate(f) {
        Some((id, reference)) if normal_form(&reference) == normal_form(f) => id,
        _ => SurfaceId::Unrecognized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::is_primitive;
    use proptest::prelude::*;

    #[test]
    fn named_fans() {
        assert_eq!(recognize(&p2_fan()), SurfaceId::P2);
        assert_eq!(recognize(&Fan2D::new(vec![(1, 0), (0, 1), (-2, -3)]).unwrap()), SurfaceId::P123);
        for n in 0..6 {
            assert_eq!(recognize(&hirzebruch_fan(n).unwrap()), SurfaceId::Sigma(n as u64));
        }
        for n in 2..6 {
            assert_eq!(recognize(&weighted_p11n_fan(n).unwrap()), SurfaceId::P11n(n as u64));
        }
        assert_eq!(recognize(&Fan2D::new(vec![(1, 0), (0, 1), (-2, -5)]).unwrap()), SurfaceId::Unrecognized);
        // P²/(ℤ/3): rays span an index-3 sublattice.
        assert_eq!(recognize(&Fan2D::new(vec![(2, -1), (-1, 2), (-1, -1)]).unwrap()), SurfaceId::Unrecognized);
        let five = hirzebruch_fan(1).unwrap().star_subdivide((1, 1)).unwrap();
        assert_eq!(recognize(&five), SurfaceId::Unrecognized);
        assert_eq!(SurfaceId::Sigma(2).to_string(), "Sigma_2");
    }

    #[test]
    fn blowup_of_p2_is_sigma_1() {
        let f = p2_fan().star_subdivide((1, 1)).unwrap();
        assert_eq!(recognize(&f), SurfaceId::Sigma(1));
    }

    proptest! {
        #[test]
        fn recognition_is_lattice_invariant(
            which in 0usize..4, n in 0i64..5,
            moves in prop::collection::vec((0u8..3, -2i64..=2), 0..6)
        ) {
            // Product of elementary unimodular matrices.
            let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
            for (kind, s) in moves {
                (a, b, c, d) = match kind {
                    0 => (a + s * c, b + s * d, c, d),
                    1 => (a, b, c + s * a, d + s * b),
                    _ => (c, d, a, b),
                };
            }
            let f = match which {
                0 => p2_fan(),
                1 => p123_fan(),
                2 => weighted_p11n_fan(n + 1).unwrap(),
                _ => hirzebruch_fan(n).unwrap(),
            };
            let rays: Vec<Ray> = f.rays().iter().map(|v| (a * v.0 + b * v.1, c * v.0 + d * v.1)).collect();
            prop_assert!(rays.iter().all(|v| is_primitive(*v)));
            let g = Fan2D::new(rays).unwrap();
            prop_assert_eq!(recognize(&g), recognize(&f));
            prop_assert_eq!(normal_form(&g), normal_form(&f));
        }
    }
}
