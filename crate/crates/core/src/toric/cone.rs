use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::{det, Ray};
use crate::error::{Error, Result};

/// `|det(v, w)|`.
pub fn cone_index(v: Ray, w: Ray) -> Result<u64> {
    match det(v, w) {
        0 => Err(Error::pre(format!("rays {v:?} and {w:?} span a degenerate cone"))),
        d => Ok(d.unsigned_abs()),
    }
}

/// Unimodular `M` with `M v = (0, 1)`, returned as rows, and its inverse.
fn to_model(v: Ray) -> ([[i64; 2]; 2], [[i64; 2]; 2]) {
    let (a, b) = v;
    let e = a.extended_gcd(&b);
    // a p + b r = 1 (v is primitive up to sign; fix the sign of the gcd).
    let (p, r) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    ([[-b, a], [p, r]], [[-r, a], [p, b]])
}

fn apply(m: [[i64; 2]; 2], v: Ray) -> Ray {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

/// `(n, q)` such that the cone `⟨v, w⟩` is lattice isomorphic to
/// `⟨(0,1), (n,-q)⟩` with `v ↦ (0,1)`, `0 ≤ q < n`.
pub fn cyclic_type(v: Ray, w: Ray) -> Result<(u64, u64)> {
    let (n, q, _) = model(v, w)?;
    Ok((n as u64, q as u64))
}

/// `(n, q, t)` where `t` is the shear used in [`cyclic_type`].
fn model(v: Ray, w: Ray) -> Result<(i64, i64, i64)> {
    if det(v, w) == 0 {
        return Err(Error::pre(format!("rays {v:?}, {w:?} span a degenerate cone")));
    }
    if v.0.gcd(&v.1) != 1 || w.0.gcd(&w.1) != 1 {
        return Err(Error::pre("cone rays must be primitive"));
    }
    let (m, _) = to_model(v);
    // For clockwise cones, reflect in the y-axis, which fixes (0,1).
    let (x, y) = apply(m, w);
    let n = x.abs();
    let q = (-y).rem_euclid(n);
    let t = (-q - y) / n;
    Ok((n, q, t))
}

/// `n/q = b_1 - 1/(b_2 - ...)` with every `b_i ≥ 2`; empty for `q = 0`.
pub fn hj_continued_fraction(n: u64, q: u64) -> Vec<u64> {
    let (mut n, mut q) = (n, q);
    let mut out = Vec::new();
    while q > 0 {
        let b = n.div_ceil(q);
        out.push(b);
        (n, q) = (q, b * q - n);
    }
    out
}

/// Rays of the minimal resolution of `⟨v, w⟩`, ordered from `v` to `w`, each
/// with the self-intersection of its exceptional curve. Reversed cones are
/// accepted and answered in the given order.
pub fn hj_resolve(v: Ray, w: Ray) -> Result<Vec<(Ray, i64)>> {
    if det(v, w) < 0 {
        let mut out = hj_resolve(w, v)?;
        out.reverse();
        return Ok(out);
    }
    let (n, q, t) = model(v, w)?;
    let (_, minv) = to_model(v);
    let bs = hj_continued_fraction(n as u64, q as u64);
    let mut out = Vec::with_capacity(bs.len());
    let (mut prev, mut cur): (Ray, Ray) = ((0, 1), (1, 0));
    for &b in &bs {
        // Undo the shear (x, y) -> (x, y + t x), then M.
        let unsheared = (cur.0, cur.1 - t * cur.0);
        out.push((apply(minv, unsheared), -(b as i64)));
        let b = b as i64;
        (prev, cur) = (cur, (b * cur.0 - prev.0, b * cur.1 - prev.1));
    }
    debug_assert_eq!(cur, (n, -q));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeLabel {
    Smooth,
    /// `A_{n-1}`: `q = n - 1`.
    A(u64),
    /// `1/n(1,1)` with `n ≥ 3`.
    C(u64),
    Other(u64, u64),
}

impl ConeLabel {
    pub fn from_type(n: u64, q: u64) -> Self {
        match (n, q) {
            (1, _) => ConeLabel::Smooth,
            (n, q) if q == n - 1 => ConeLabel::A(n - 1),
            (n, 1) => ConeLabel::C(n),
            (n, q) => ConeLabel::Other(n, q),
        }
    }
}

impl fmt::Display for ConeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeLabel::Smooth => write!(f, "Smooth"),
            ConeLabel::A(k) => write!(f, "A_{k}"),
            ConeLabel::C(n) => write!(f, "C_{n}"),
            ConeLabel::Other(n, q) => write!(f, "Other({n},{q})"),
        }
    }
}

impl Serialize for ConeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub rays: [Ray; 2],
    pub index: u64,
    pub cyclic_type: (u64, u64),
    pub label: ConeLabel,
}

impl ConeReport {
    pub fn new(v: Ray, w: Ray) -> Result<Self> {
        let index = cone_index(v, w)?;
        let (n, q) = cyclic_type(v, w)?;
        Ok(ConeReport { rays: [v, w], index, cyclic_type: (n, q), label: ConeLabel::from_type(n, q) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn indices() {
        assert_eq!(cone_index((1, 0), (0, 1)).unwrap(), 1);
        assert_eq!(cone_index((0, 1), (-2, -3)).unwrap(), 2);
        assert_eq!(cone_index((-2, -3), (1, 0)).unwrap(), 3);
        assert!(cone_index((1, 2), (2, 4)).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(ConeReport::new((1, 0), (0, 1)).unwrap().label, ConeLabel::Smooth);
        assert_eq!(cyclic_type((1, 0), (0, 1)).unwrap(), (1, 0));
        assert_eq!(ConeReport::new((0, 1), (3, -1)).unwrap().label, ConeLabel::C(3));
        assert_eq!(ConeReport::new((0, 1), (3, -2)).unwrap().label, ConeLabel::A(2));
        assert_eq!(ConeReport::new((0, 1), (2, -1)).unwrap().label, ConeLabel::A(1));
        assert_eq!(ConeReport::new((0, 1), (5, -2)).unwrap().label, ConeLabel::Other(5, 2));
        assert_eq!(ConeLabel::A(2).to_string(), "A_2");
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hj_continued_fraction(3, 1), vec![3]);
        assert_eq!(hj_continued_fraction(3, 2), vec![2, 2]);
        assert_eq!(hj_continued_fraction(5, 2), vec![3, 2]);
        assert_eq!(hj_continued_fraction(7, 3), vec![3, 2, 2]);
        assert!(hj_continued_fraction(1, 0).is_empty());
    }

    #[test]
    fn resolutions() {
        let c3 = hj_resolve((0, 1), (3, -1)).unwrap();
        assert_eq!(c3, vec![((1, 0), -3)]);
        let a1 = hj_resolve((0, 1), (2, -1)).unwrap();
        assert_eq!(a1.iter().map(|r| r.1).collect::<Vec<_>>(), vec![-2]);
        let a2 = hj_resolve((0, 1), (3, -2)).unwrap();
        assert_eq!(a2.iter().map(|r| r.1).collect::<Vec<_>>(), vec![-2, -2]);
        assert!(hj_resolve((1, 0), (0, 1)).unwrap().is_empty());
        assert_eq!(hj_resolve((3, -1), (0, 1)).unwrap(), vec![((1, 0), -3)]);
    }

    fn primitive() -> impl Strategy<Value = Ray> {
        (-9i64..=9, -9i64..=9).prop_filter("primitive", |v| v.0.gcd(&v.1) == 1)
    }

    proptest! {
        #[test]
        fn resolution_is_smooth_and_ordered(v in primitive(), w in primitive()) {
            prop_assume!(det(v, w) > 0);
            let rays = hj_resolve(v, w).unwrap();
            let mut chain = vec![v];
            chain.extend(rays.iter().map(|r| r.0));
            chain.push(w);
            for p in chain.windows(2) {
                prop_assert_eq!(det(p[0], p[1]), 1);
            }
            // u_{i-1} + u_{i+1} = b_i u_i along the chain.
            for (i, &(u, s)) in rays.iter().enumerate() {
                let (a, c) = (chain[i], chain[i + 2]);
                prop_assert_eq!((a.0 + c.0, a.1 + c.1), (-s * u.0, -s * u.1));
            }
        }

        #[test]
        fn cyclic_type_is_lattice_invariant(v in primitive(), w in primitive(), s in -4i64..=4) {
            prop_assume!(det(v, w) > 0);
            let g = |r: Ray| (r.0 + s * r.1, r.1);
            prop_assert_eq!(cyclic_type(v, w).unwrap(), cyclic_type(g(v), g(w)).unwrap());
        }
    }
}
