use serde::{Deserialize, Serialize};

use super::classify::{classify_trichotomy, CurvePairClass};
use super::cover::elliptic_kernel;
use super::presentation::orbifold_presentation;
use super::CurveDivisor;
use crate::error::Result;
use crate::fp::perm::{element_order, inv, mul, Perm};
use crate::fp::{
    abelianization, coset_enumerate, regular_representation, subgroup_report, AbelianInvariants,
    Presentation, DEFAULT_ORDER_BOUND,
};

/// What could be certified about `π1` of a pair.
///
/// Finite groups are named by order and derived-series fingerprint only; two
/// groups sharing a fingerprint would share a name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupIdentification {
    pub finite: Option<bool>,
    pub order: Option<u64>,
    pub name: String,
    pub abelianization: AbelianInvariants,
    pub derived_series: Option<Vec<u128>>,
    /// Set for toric pairs, whose groups should be cyclic or dihedral.
    pub cyclic_or_dihedral: Option<bool>,
    /// Whether the identification agrees with what the class predicts.
    pub consistent_with_class: bool,
    pub method: String,
}

pub fn identify_orbifold_group(d: &CurveDivisor, max_cosets: usize) -> Result<GroupIdentification> {
    let class = classify_trichotomy(d)?;
    let pres = orbifold_presentation(d)?.presentation;
    let ab = abelianization(&pres);
    let simple = pres.eliminate_generators();
    let mut id = GroupIdentification {
        finite: None,
        order: None,
        name: "unidentified".into(),
        abelianization: ab.clone(),
        derived_series: None,
        cyclic_or_dihedral: None,
        consistent_with_class: false,
        method: String::new(),
    };

    if simple.generator_count() <= 1 {
        id.method = "Tietze elimination to at most one generator".into();
        id.cyclic_or_dihedral = Some(true);
        if ab.free_rank > 0 {
            id.finite = Some(false);
            id.name = "Z".into();
        } else {
            let n = ab.order().map(|o| u64::try_from(o).unwrap_or(u64::MAX)).unwrap_or(1);
            id.finite = Some(true);
            id.order = Some(n);
            id.name = if n == 1 { "1".into() } else { format!("Z/{n}") };
        }
    } else if is_free_product_of_two_involutions(&simple) {
        id.method = "Tietze elimination to <x,y | x^2, y^2>".into();
        id.finite = Some(false);
        id.cyclic_or_dihedral = Some(true);
        id.name = "infinite dihedral".into();
    } else if let CurvePairClass::Elliptic(f) = class {
        let k = elliptic_kernel(d)?.expect("elliptic class");
        let r = subgroup_report(&pres, &k.subgroup_generators, max_cosets)?;
        let ok = r.index as u64 == f.cover_degree()
            && r.abelianization.free_rank == 2
            && r.abelianization.torsion.is_empty();
        id.method = "kernel of a map to a cyclic group, Reidemeister-Schreier".into();
        if ok {
            id.finite = Some(false);
            id.name = format!("virtually Z^2 (Z^2 of index {})", r.index);
        }
    } else if ab.free_rank > 0 {
        id.method = "abelianization".into();
        id.finite = Some(false);
        id.name = format!("infinite with abelianization {ab}");
    } else {
        let table = coset_enumerate(&pres, &[], max_cosets)?;
        id.method = "coset enumeration over the trivial subgroup".into();
        if table.is_complete() {
            let g = regular_representation(&table)?;
            let a = g.analyze(DEFAULT_ORDER_BOUND)?;
            let n = a.order as u64;
            id.finite = Some(true);
            id.order = Some(n);
            id.derived_series = Some(a.derived_series.clone());
            let elems = g.elements(n as usize + 1).unwrap_or_default();
            let cyclic = elems.iter().any(|e| element_order(e) == n);
            let dihedral = !cyclic && is_dihedral(&elems, n);
            if matches!(class, CurvePairClass::Toric(_)) {
                id.cyclic_or_dihedral = Some(cyclic || dihedral);
            }
            id.name = if n == 1 {
                "1".into()
            } else if cyclic {
                format!("Z/{n}")
            } else if dihedral {
                format!("D{} (dihedral of order {n})", n / 2)
            } else {
                match (n, a.derived_series.as_slice()) {
                    (12, [12, 4, 1]) => "A4".into(),
                    (24, [24, 12, 4, 1]) => "S4".into(),
                    (60, [60, 60]) => "A5".into(),
                    _ => format!("order {n}"),
                }
            };
        }
    }

    id.consistent_with_class = match class {
        CurvePairClass::Toric(_) => id.cyclic_or_dihedral == Some(true),
        CurvePairClass::Elliptic(_) => id.finite == Some(false),
        CurvePairClass::Sporadic([_, _, n]) => {
            id.name == match n {
                3 => "A4",
                4 => "S4",
                _ => "A5",
            }
        }
    };
    Ok(id)
}

fn is_free_product_of_two_involutions(p: &Presentation) -> bool {
    if p.generator_count() != 2 || p.relators.len() != 2 {
        return false;
    }
    let mut rels: Vec<Vec<i32>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).collect())
        .collect();
    rels.sort();
    rels == vec![vec![1, 1], vec![2, 2]]
}

/// `|G| = 2n` with an element `r` of order `n` and an involution `s ∉ ⟨r⟩`
/// inverting `r`.
fn is_dihedral(elems: &[Perm], order: u64) -> bool {
    if order < 4 || order % 2 == 1 {
        return false;
    }
    let n = order / 2;
    elems.iter().filter(|r| element_order(r) == n).any(|r| {
        let mut cyc = vec![r.clone()];
        while cyc.len() < n as usize {
            cyc.push(mul(cyc.last().unwrap(), r));
        }
        let r_inv = inv(r);
        elems.iter().any(|s| {
            element_order(s) == 2 && !cyc.contains(s) && mul(&mul(s, r), s) == r_inv
        })
    })
}
