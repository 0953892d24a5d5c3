//! Complete fans in `ℤ²`.

mod cone;
mod recognize;

pub use cone::{cone_index, cyclic_type, hj_continued_fraction, hj_resolve, ConeLabel, ConeReport};
pub use recognize::{normal_form, recognize, SurfaceId};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_q, Q};

pub type Ray = (i64, i64);

pub fn det(v: Ray, w: Ray) -> i64 {
    v.0 * w.1 - v.1 * w.0
}

pub fn is_primitive(v: Ray) -> bool {
    v.0.gcd(&v.1) == 1
}

fn half_plane(v: Ray) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 }
}

/// Counterclockwise order starting from the positive x-axis.
fn angle_cmp(v: &Ray, w: &Ray) -> std::cmp::Ordering {
    half_plane(*v).cmp(&half_plane(*w)).then_with(|| 0.cmp(&det(*v, *w)))
}

/// A complete fan, rays counterclockwise and rotated so that the
/// lexicographically smallest ray comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFan")]
pub struct Fan2D {
    rays: Vec<Ray>,
}

#[derive(Deserialize)]
struct RawFan {
    rays: Vec<Ray>,
}

impl TryFrom<RawFan> for Fan2D {
    type Error = Error;
    fn try_from(raw: RawFan) -> Result<Self> {
        Fan2D::new(raw.rays)
    }
}

impl Fan2D {
    /// Sorts the rays and checks primitivity and completeness.
    pub fn new(mut rays: Vec<Ray>) -> Result<Self> {
        if rays.len() < 3 {
            return Err(Error::pre(format!("a complete fan needs at least 3 rays, got {}", rays.len())));
        }
        if let Some(v) = rays.iter().find(|v| !is_primitive(**v)) {
            return Err(Error::pre(format!("ray {v:?} is not primitive")));
        }
        rays.sort_by(angle_cmp);
        let r = rays.len();
        for i in 0..r {
            let (v, w) = (rays[i], rays[(i + 1) % r]);
            if det(v, w) <= 0 {
                return Err(Error::pre(format!(
                    "rays {v:?} and {w:?} do not span a strictly convex cone; the fan is not complete"
                )));
            }
        }
        let start = (0..r).min_by_key(|&i| rays[i]).unwrap();
        rays.rotate_left(start);
        Ok(Fan2D { rays })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value::<Fan2D>(v.clone()).map_err(|e| Error::parse(format!("bad fan: {e}")))
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn picard_rank(&self) -> usize {
        self.rays.len() - 2
    }

    fn ray(&self, i: isize) -> Ray {
        self.rays[i.rem_euclid(self.rays.len() as isize) as usize]
    }

    pub fn position(&self, v: Ray) -> Option<usize> {
        self.rays.iter().position(|&w| w == v)
    }

    /// Cone `i` is spanned by rays `i` and `i + 1`.
    pub fn cone(&self, i: usize) -> (Ray, Ray) {
        (self.ray(i as isize), self.ray(i as isize + 1))
    }

    pub fn cones(&self) -> Vec<ConeReport> {
        (0..self.len()).map(|i| {
            let (v, w) = self.cone(i);
            ConeReport::new(v, w).expect("fan cones are nondegenerate")
        }).collect()
    }

    pub fn cone_indices(&self) -> Vec<u64> {
        (0..self.len()).map(|i| {
            let (v, w) = self.cone(i);
            det(v, w) as u64
        }).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cone_indices().iter().all(|&d| d == 1)
    }

    /// Inserts a primitive ray lying strictly inside a cone.
    pub fn star_subdivide(&self, v: Ray) -> Result<Fan2D> {
        if !is_primitive(v) {
            return Err(Error::pre(format!("ray {v:?} is not primitive")));
        }
        if self.position(v).is_some() {
            return Err(Error::pre(format!("ray {v:?} is already in the fan")));
        }
        let mut rays = self.rays.clone();
        rays.push(v);
        Fan2D::new(rays)
    }

    /// Minimal resolution: every cone replaced by its Hirzebruch–Jung subdivision.
    pub fn resolve(&self) -> Fan2D {
        let mut rays = self.rays.clone();
        for i in 0..self.len() {
            let (v, w) = self.cone(i);
            rays.extend(hj_resolve(v, w).expect("fan cones are nondegenerate").into_iter().map(|(r, _)| r));
        }
        Fan2D::new(rays).expect("resolution of a complete fan is complete")
    }

    /// `D_i²` on the smooth fan, read off `v_{i-1} + v_{i+1} = -D_i² v_i`.
    fn smooth_self_intersection(&self, i: usize) -> i64 {
        let i = i as isize;
        -det(self.ray(i - 1), self.ray(i + 1))
    }

    /// Self-intersection of the invariant curve of ray `i`, computed on the
    /// minimal resolution and pushed down.
    pub fn self_intersection(&self, i: usize) -> Result<Q> {
        if i >= self.len() {
            return Err(Error::pre(format!("ray position {i} out of range for {} rays", self.len())));
        }
        let v = self.rays[i];
        let resolved = self.resolve();
        let j = resolved.position(v).expect("resolution keeps the original rays");
        let mut total = Q::from_integer(resolved.smooth_self_intersection(j).into());
        // (π*D)·E = 0 for each exceptional chain next to v.
        let (prev, next) = (self.ray(i as isize - 1), self.ray(i as isize + 1));
        for (chain, adjacent_at_start) in [(hj_resolve(prev, v)?, false), (hj_resolve(v, next)?, true)] {
            if chain.is_empty() {
                continue;
            }
            let diag: Vec<i64> = chain.iter().map(|&(_, s)| s).collect();
            let adj = if adjacent_at_start { 0 } else { diag.len() - 1 };
            let coeffs = solve_chain(&diag, adj);
            total += &coeffs[adj];
        }
        Ok(total)
    }

    pub fn self_intersections(&self) -> Vec<Q> {
        (0..self.len()).map(|i| self.self_intersection(i).expect("index in range")).collect()
    }
}

/// Solves `A c = -e_adj` for the chain intersection matrix with diagonal
/// `diag` and ones off the diagonal.
fn solve_chain(diag: &[i64], adj: usize) -> Vec<Q> {
    let n = diag.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row = vec![Q::zero(); n + 1];
            row[r] = Q::from_integer(diag[r].into());
            if r > 0 {
                row[r - 1] = Q::one();
            }
            if r + 1 < n {
                row[r + 1] = Q::one();
            }
            if r == adj {
                row[n] = -Q::one();
            }
            row
        })
        .collect();
    // Negative definite, so plain elimination never meets a zero pivot.
    for col in 0..n {
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot;
                for c in col..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    (0..n).map(|r| &a[r][n] / &a[r][r]).collect()
}

/// `ρ(X)` and `|Δ|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySum {
    pub picard_rank: usize,
    #[serde(with = "serde_q")]
    pub coeff_sum: Q,
}

impl BoundarySum {
    /// Boundary of a toric surface with the given coefficients on its
    /// invariant curves, one per ray.
    pub fn of_fan(fan: &Fan2D, coeffs: &[Q]) -> Result<Self> {
        if coeffs.len() != fan.len() {
            return Err(Error::pre(format!("{} coefficients for {} rays", coeffs.len(), fan.len())));
        }
        Ok(BoundarySum { picard_rank: fan.picard_rank(), coeff_sum: coeffs.iter().sum() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    #[serde(with = "serde_q")]
    pub complexity: Q,
    /// Set when the complexity is below 1.
    pub toric: bool,
}

/// `ρ + dim − |Δ|` for surfaces.
pub fn complexity(b: &BoundarySum) -> ComplexityReport {
    let c = BigRational::from_integer((b.picard_rank as i64 + 2).into()) - &b.coeff_sum;
    let toric = c < Q::one();
    ComplexityReport { complexity: c, toric }
}

/// Reference fans.
pub fn p2_fan() -> Fan2D {
    Fan2D::new(vec![(1, 0), (0, 1), (-1, -1)]).unwrap()
}

pub fn weighted_p11n_fan(n: i64) -> Result<Fan2D> {
    if n < 1 {
        return Err(Error::pre("n must be positive"));
    }
    Fan2D::new(vec![(1, 0), (0, 1), (-1, -n)])
}

pub fn p123_fan() -> Fan2D {
    Fan2D::new(vec![(1, 0), (0, 1), (-2, -3)]).unwrap()
}

pub fn hirzebruch_fan(n: i64) -> Result<Fan2D> {
    if n < 0 {
        return Err(Error::pre("n must be non-negative"));
    }
    Fan2D::new(vec![(1, 0), (0, 1), (-1, n), (0, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn canonical_rotation() {
        let f = Fan2D::new(vec![(0, 1), (-1, -1), (1, 0)]).unwrap();
        assert_eq!(f.rays(), &[(-1, -1), (1, 0), (0, 1)]);
        assert_eq!(f, p2_fan());
        assert!(Fan2D::new(vec![(1, 0), (0, 1)]).is_err());
        assert!(Fan2D::new(vec![(1, 0), (0, 1), (1, 1)]).is_err());
        assert!(Fan2D::new(vec![(2, 0), (0, 1), (-1, -1)]).is_err());
        assert!(Fan2D::new(vec![(1, 0), (1, 0), (0, 1), (-1, -1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = hirzebruch_fan(2).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(Fan2D::from_json(&v).unwrap(), f);
        assert!(Fan2D::from_json(&serde_json::json!({"rays": [[1,0],[0,1]]})).is_err());
    }

    #[test]
    fn p123_subdivision() {
        let f = p123_fan();
        let mut idx = f.cone_indices();
        idx.sort();
        assert_eq!(idx, vec![1, 2, 3]);
        let g = f.star_subdivide((0, -1)).unwrap();
        // Starting from (0,1): (0,1),(-2,-3),(0,-1),(1,0).
        let start = g.position((0, 1)).unwrap();
        let cyc: Vec<u64> = (0..4).map(|j| g.cone_indices()[(start + j) % 4]).collect();
        assert_eq!(cyc, vec![2, 2, 1, 1]);
        assert!(f.star_subdivide((0, 1)).is_err());
        assert!(f.star_subdivide((0, -2)).is_err());
    }

    #[test]
    fn p2_blowup_is_smooth() {
        let g = p2_fan().star_subdivide((1, 1)).unwrap();
        assert!(g.is_smooth());
        assert_eq!(g.picard_rank(), 2);
    }

    #[test]
    fn self_intersections_examples() {
        let s2 = hirzebruch_fan(2).unwrap();
        assert_eq!(s2.self_intersection(s2.position((0, 1)).unwrap()).unwrap(), qi(-2));
        assert_eq!(s2.self_intersection(s2.position((0, -1)).unwrap()).unwrap(), qi(2));
        assert!(p2_fan().self_intersections().iter().all(|d| *d == qi(1)));
        // P(1,1,2): the curve through the singular point has square 1/2.
        let f = weighted_p11n_fan(2).unwrap();
        let d = f.self_intersections();
        assert_eq!(d.iter().filter(|x| **x == q(1, 2)).count(), 2);
        assert!(d.contains(&qi(2)));
        assert!(s2.self_intersection(9).is_err());
    }

    #[test]
    fn complexity_examples() {
        let c = complexity(&BoundarySum { picard_rank: 1, coeff_sum: qi(3) });
        assert_eq!((c.complexity, c.toric), (qi(0), true));
        let c = complexity(&BoundarySum { picard_rank: 1, coeff_sum: qi(1) + qi(3) * q(1, 2) });
        assert_eq!((c.complexity, c.toric), (q(1, 2), true));
        let c = complexity(&BoundarySum { picard_rank: 2, coeff_sum: qi(0) });
        assert_eq!((c.complexity, c.toric), (qi(4), false));
    }

    fn closed_form(f: &Fan2D, i: usize) -> Q {
        let i = i as isize;
        let (p, v, n) = (f.ray(i - 1), f.ray(i), f.ray(i + 1));
        Q::new((-det(p, n)).into(), (det(p, v) * det(v, n)).into())
    }

    fn random_fan() -> impl Strategy<Value = Option<Fan2D>> {
        prop::collection::vec((-6i64..=6, -6i64..=6), 3..7).prop_map(|mut rays| {
            rays.retain(|v| is_primitive(*v));
            rays.sort();
            rays.dedup();
            Fan2D::new(rays).ok()
        })
    }

    /// Smooth fans from P² or Σ_n by repeated smooth blow-ups.
    fn smooth_fan() -> impl Strategy<Value = Fan2D> {
        (0i64..=4, any::<bool>(), prop::collection::vec(0usize..8, 0..6)).prop_map(|(n, p2, picks)| {
            let mut f = if p2 { p2_fan() } else { hirzebruch_fan(n).unwrap() };
            for k in picks {
                if f.len() >= 8 {
                    break;
                }
                let (v, w) = f.cone(k % f.len());
                f = f.star_subdivide((v.0 + w.0, v.1 + w.1)).unwrap();
            }
            f
        })
    }

    proptest! {
        #[test]
        fn smooth_fans_satisfy_noether(f in smooth_fan()) {
            prop_assert!(f.is_smooth());
            let total: Q = f.self_intersections().iter().sum();
            prop_assert_eq!(total, qi(12 - 3 * f.len() as i64));
        }

        #[test]
        fn resolution_and_pushdown(f in random_fan()) {
            if let Some(f) = f {
                let r = f.resolve();
                prop_assert!(r.is_smooth());
                prop_assert_eq!(r.resolve(), r.clone());
                for i in 0..f.len() {
                    prop_assert_eq!(f.self_intersection(i).unwrap(), closed_form(&f, i));
                }
            }
        }

        #[test]
        fn subdivision_raises_picard_rank(f in random_fan(), k in 0usize..8, a in 1i64..4, b in 1i64..4) {
            if let Some(f) = f {
                let (v, w) = f.cone(k % f.len());
                let (x, y) = (a * v.0 + b * w.0, a * v.1 + b * w.1);
                let g = x.gcd(&y);
                let g = f.star_subdivide((x / g, y / g)).unwrap();
                prop_assert_eq!(g.picard_rank(), f.picard_rank() + 1);
            }
        }

        #[test]
        fn toric_boundary_has_complexity_zero(f in random_fan()) {
            if let Some(f) = f {
                let b = BoundarySum::of_fan(&f, &vec![qi(1); f.len()]).unwrap();
                let c = complexity(&b);
                prop_assert_eq!(c.complexity, qi(0));
            }
        }
    }
}
