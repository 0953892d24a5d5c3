use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::classify::{classify_trichotomy, CurvePairClass, EllipticFamily};
use super::presentation::orbifold_presentation;
use super::{CurveDivisor, MarkedPoint, OrbifoldIndex};
use crate::error::{Error, Result};
use crate::fp::word::{free_reduce, inverse, power, Word};
use crate::rational::q;

/// The cover attached to the maximal normal abelian subgroup of finite index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationCover {
    pub degree: u64,
    pub target: CurveDivisor,
}

pub fn abelianization_cover(d: &CurveDivisor) -> Result<AbelianizationCover> {
    let class = classify_trichotomy(d)?;
    let d = d.canonical();
    Ok(match class {
        CurvePairClass::Sporadic([_, _, n]) => AbelianizationCover {
            degree: match n {
                3 => 12,
                4 => 24,
                _ => 60,
            },
            target: CurveDivisor { genus: 0, points: vec![] },
        },
        CurvePairClass::Elliptic(f) => AbelianizationCover {
            degree: f.cover_degree(),
            target: CurveDivisor { genus: 1, points: vec![] },
        },
        CurvePairClass::Toric(_) => {
            let half = q(1, 2);
            let halves = d.points.iter().filter(|p| p.coeff == half).count();
            if d.points.len() == 3 && halves == 2 {
                let third = d.points.iter().find(|p| p.coeff != half).unwrap();
                AbelianizationCover {
                    degree: 2,
                    target: CurveDivisor {
                        genus: 0,
                        points: (1..=2)
                            .map(|i| MarkedPoint::new(format!("{}.{i}", third.label), third.coeff.clone()))
                            .collect(),
                    },
                }
            } else {
                AbelianizationCover { degree: 1, target: d }
            }
        }
    })
}

/// Schreier generators of the kernel of `x_i ↦ images[i]` onto `ℤ/modulus`.
///
/// Requires some generator whose image is a unit; its powers form the transversal.
pub fn cyclic_kernel_generators(images: &[i64], modulus: u64) -> Result<Vec<Word>> {
    let d = modulus as i64;
    if d < 1 {
        return Err(Error::pre("modulus must be positive"));
    }
    if d == 1 {
        return Ok((1..=images.len() as i32).map(|g| vec![g]).collect());
    }
    let (t, unit) = images
        .iter()
        .enumerate()
        .map(|(i, &x)| (i as i32 + 1, x.rem_euclid(d)))
        .find(|&(_, x)| x.gcd(&d) == 1)
        .ok_or_else(|| Error::pre("no generator maps to a unit"))?;
    let unit_inv = (1..d).find(|&v| (v * unit) % d == 1).unwrap_or(1);
    let rep = |j: i64| power(&[t], (j.rem_euclid(d) * unit_inv) % d);
    let mut out: Vec<Word> = Vec::new();
    for j in 0..d {
        for (i, &img) in images.iter().enumerate() {
            let g = i as i32 + 1;
            let w = free_reduce(&[rep(j), vec![g], inverse(&rep(j + img))].concat());
            if !w.is_empty() && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// The index-`d` subgroup isomorphic to `ℤ²` in an elliptic-type group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticKernel {
    pub family: EllipticFamily,
    pub degree: u64,
    /// Image of each presentation generator in `ℤ/degree`.
    pub images: Vec<i64>,
    pub subgroup_generators: Vec<Word>,
}

/// Kernel data for elliptic-type pairs, in the generator numbering of
/// [`orbifold_presentation`]; `None` for other kinds.
pub fn elliptic_kernel(d: &CurveDivisor) -> Result<Option<EllipticKernel>> {
    let CurvePairClass::Elliptic(family) = classify_trichotomy(d)? else {
        return Ok(None);
    };
    let pres = orbifold_presentation(d)?;
    let degree = family.cover_degree();
    let images: Vec<i64> = if family == EllipticFamily::EllipticCurve {
        vec![0; pres.presentation.generator_count()]
    } else {
        d.indices()?
            .into_iter()
            .map(|m| match (family, m) {
                (EllipticFamily::Halves, _) | (EllipticFamily::Thirds, _) => 1,
                (EllipticFamily::TwoThreeSix, OrbifoldIndex::Finite(2)) => 3,
                (EllipticFamily::TwoThreeSix, OrbifoldIndex::Finite(3)) => 2,
                (EllipticFamily::TwoFourFour, OrbifoldIndex::Finite(2)) => 2,
                _ => 1,
            })
            .collect()
    };
    let subgroup_generators = cyclic_kernel_generators(&images, degree)?;
    Ok(Some(EllipticKernel { family, degree, images, subgroup_generators }))
}
