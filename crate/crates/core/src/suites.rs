//! Self-checking verification suites, one per headline property. The CLI's
//! `verify` subcommand runs these.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::curve::{
    abelianization_cover, classify_trichotomy, elliptic_kernel, enumerate_standard_pairs,
    identify_orbifold_group, orbifold_presentation, CurveDivisor, CurvePairClass, EllipticFamily, PairKind,
};
use crate::error::{Error, Result};
use crate::fibration::{
    adjunction_coefficient, base_pair_coefficient, bundle_pi1, check_compatible, nori_certificate,
    ramification_pullback, AdjunctionPointDatum, Contribution, CoverCoeffDatum, FibrationFiberDatum,
};
use crate::fp::{abelianization, subgroup_report, PermGroup, Word, DEFAULT_MAX_COSETS, DEFAULT_ORDER_BOUND};
use crate::nilpotent::gadgets::{lemma_42_gadget, lemma_43_gadget, lemma_44_gadget};
use crate::nilpotent::rewriting::rewrite_to_element;
use crate::nilpotent::{
    ceil_sqrt_ratio, h_commutator, is_virtually_abelian, min_abelian_normal_index, HeisenbergElement,
};
use crate::rational::{format_rational, q, qi, Q};
use crate::toric::{hirzebruch_fan, hj_resolve, normal_form, p123_fan, p2_fan, Fan2D};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<SuiteCheck>,
}

pub const SUITES: [&str; 10] = [
    "trichotomy",
    "elliptic",
    "heisenberg",
    "rewriting",
    "minindex",
    "gadgets",
    "cremona",
    "toric",
    "coefficients",
    "bundles",
];

#[derive(Default)]
struct Collector(Vec<SuiteCheck>);

impl Collector {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(SuiteCheck { name: name.into(), passed, detail: detail.into() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, expected: T, observed: T) {
        let passed = expected == observed;
        self.check(name, passed, format!("expected {expected:?}, observed {observed:?}"));
    }

    fn finish(self, suite: &'static str) -> SuiteReport {
        let passed = !self.0.is_empty() && self.0.iter().all(|c| c.passed);
        SuiteReport { suite, passed, checks: self.0 }
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "trichotomy" => trichotomy(),
        "elliptic" => elliptic(),
        "heisenberg" => heisenberg(),
        "rewriting" => rewriting(),
        "minindex" => minindex(),
        "gadgets" => gadgets(),
        "cremona" => cremona(),
        "toric" => toric(),
        "coefficients" => coefficients(),
        "bundles" => bundles(),
        _ => Err(Error::parse(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

pub fn run_all() -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s)).collect()
}

fn rational_divisor(cs: &[Q]) -> CurveDivisor {
    CurveDivisor::rational(cs).expect("valid coefficients")
}

fn trichotomy() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let mut sporadic = BTreeSet::new();
    let mut total = 0usize;
    for d in enumerate_standard_pairs(30) {
        total += 1;
        if let CurvePairClass::Sporadic(idx) = classify_trichotomy(&d)? {
            sporadic.insert(idx);
        }
    }
    c.check("enumeration is nonempty", total > 0, format!("{total} divisors"));
    c.eq("sporadic set", BTreeSet::from([[2, 3, 3], [2, 3, 4], [2, 3, 5]]), sporadic);
    for (n, order, name) in [(3, 12, "A4"), (4, 24, "S4"), (5, 60, "A5")] {
        let d = rational_divisor(&[q(1, 2), q(2, 3), qi(1) - q(1, n)]);
        let id = identify_orbifold_group(&d, DEFAULT_MAX_COSETS)?;
        c.eq(format!("(2,3,{n}) order"), Some(order), id.order);
        c.eq(format!("(2,3,{n}) name"), name.to_string(), id.name);
    }
    Ok(c.finish("trichotomy"))
}

fn elliptic() -> Result<SuiteReport> {
    let mut c = Collector::default();
    for (family, degree) in [
        (EllipticFamily::Halves, 2),
        (EllipticFamily::Thirds, 3),
        (EllipticFamily::TwoThreeSix, 6),
        (EllipticFamily::TwoFourFour, 4),
    ] {
        let d = family.divisor();
        let label = serde_json::to_value(family).unwrap().as_str().unwrap_or_default().to_string();
        c.eq(format!("{label} cover degree"), degree, abelianization_cover(&d)?.degree);
        let k = elliptic_kernel(&d)?.ok_or_else(|| Error::Verification("not elliptic".into()))?;
        let pres = orbifold_presentation(&d)?.presentation;
        let r = subgroup_report(&pres, &k.subgroup_generators, DEFAULT_MAX_COSETS)?;
        c.eq(format!("{label} kernel index"), degree as usize, r.index);
        c.eq(format!("{label} kernel abelianization"), "Z^2".to_string(), r.abelianization.to_string());
    }
    Ok(c.finish("elliptic"))
}

fn heisenberg() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let mut bad = Vec::new();
    for k in -5..=5i64 {
        for m in 1..=20i64 {
            let com = h_commutator(&HeisenbergElement::a(k).pow(m), &HeisenbergElement::b(k).pow(m))?;
            if com != HeisenbergElement::new(k, 0, 0, k * m * m) {
                bad.push((k, m));
            }
        }
    }
    c.check("[a^m,b^m] = c^(k m^2), 1<=m<=20, -5<=k<=5", bad.is_empty(), format!("{} failures", bad.len()));
    Ok(c.finish("heisenberg"))
}

/// All words of length at most `len` over `a±, b±, c±`.
pub fn all_words(len: usize) -> Vec<Word> {
    let letters = [1, -1, 2, -2, 3, -3];
    let mut out = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn rewriting() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let words = all_words(6);
    for k in -2..=3 {
        let mut mismatches = 0usize;
        for w in &words {
            if rewrite_to_element(k, w)? != HeisenbergElement::from_word(k, w)? {
                mismatches += 1;
            }
        }
        c.check(format!("k={k}"), mismatches == 0, format!("{} words, {mismatches} mismatches", words.len()));
    }
    Ok(c.finish("rewriting"))
}

fn minindex() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let mut below = Vec::new();
    for k in 1..=3i64 {
        for m in 1..=36u64 {
            let r = min_abelian_normal_index(m, k, 4 * m)?;
            if r.index < ceil_sqrt_ratio(m, k) {
                below.push((m, k, r.index));
            }
        }
    }
    c.check("index >= ceil(sqrt(m/|k|)), m<=36, k in 1..3", below.is_empty(), format!("violations {below:?}"));
    for m in [1u64, 4, 9, 16] {
        c.eq(format!("k=1, m={m}"), m, min_abelian_normal_index(m, 1, 4 * m)?.index);
    }
    Ok(c.finish("minindex"))
}

fn gadgets() -> Result<SuiteReport> {
    let mut c = Collector::default();
    for k in -5..=5 {
        let r = lemma_42_gadget(k, 1, DEFAULT_MAX_COSETS)?;
        c.check(
            format!("<a^2,b^2,c> in H_{k}"),
            r.passed && r.index == 4 && r.parameter == Some(4 * k),
            format!("index {}, parameter {:?}", r.index, r.parameter),
        );
    }
    let r = lemma_43_gadget(1, DEFAULT_MAX_COSETS)?;
    c.check("<s,t,b^2,c^2>: index 4, abelian rank 4", r.passed && r.index == 4, format!("{} checks", r.checks.len()));
    let r = lemma_44_gadget(DEFAULT_MAX_COSETS)?;
    c.check("<u,b^2,c^2>: index 8", r.passed && r.index == 8, format!("{} checks", r.checks.len()));
    Ok(c.finish("gadgets"))
}

/// `(A5 × A5) ⋊ ℤ/2` on ten points, the factor swap acting by exchange.
pub fn a5_wreath_z2() -> PermGroup {
    PermGroup::from_cycles(
        10,
        &[
            &[&[1, 2, 3, 4, 5]],
            &[&[1, 2, 3]],
            &[&[1, 6], &[2, 7], &[3, 8], &[4, 9], &[5, 10]],
        ],
    )
    .expect("valid permutations")
}

fn cremona() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let g = a5_wreath_z2();
    let a = g.analyze(DEFAULT_ORDER_BOUND)?;
    c.eq("order", 7200u128, a.order);
    let d = g.derived_subgroup();
    c.eq("derived subgroup order", 3600u128, d.order());
    c.eq("derived subgroup is perfect", 3600u128, d.derived_subgroup().order());
    let left = PermGroup::from_cycles(10, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])?;
    let right = PermGroup::from_cycles(10, &[&[&[6, 7, 8, 9, 10]], &[&[6, 7, 8]]])?;
    for (name, h) in [("A5 x 1", left), ("1 x A5", right), ("A5 x A5", d)] {
        let an = h.analyze(DEFAULT_ORDER_BOUND)?;
        c.check(format!("{name} not metabelian"), !an.is_metabelian, format!("derived series {:?}", an.derived_series));
    }
    Ok(c.finish("cremona"))
}

/// Smooth complete fans with at most `max_rays` rays reachable from `P²` and
/// `Σ_n`, `n ≤ max_n`, by smooth blow-ups, up to lattice equivalence.
pub fn smooth_fans(max_rays: usize, max_n: i64) -> Vec<Fan2D> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue: Vec<Fan2D> = std::iter::once(p2_fan())
        .chain((0..=max_n).map(|n| hirzebruch_fan(n).unwrap()))
        .collect();
    while let Some(f) = queue.pop() {
        if !seen.insert(normal_form(&f)) {
            continue;
        }
        if f.len() < max_rays {
            for i in 0..f.len() {
                let (v, w) = f.cone(i);
                queue.push(f.star_subdivide((v.0 + w.0, v.1 + w.1)).expect("sum of a smooth cone's rays"));
            }
        }
        out.push(f);
    }
    out
}

fn toric() -> Result<SuiteReport> {
    let mut c = Collector::default();
    let f = p123_fan();
    let mut idx = f.cone_indices();
    idx.sort();
    c.eq("P(1,2,3) cone indices", vec![1, 2, 3], idx);
    let g = f.star_subdivide((0, -1))?;
    let start = g.position((0, 1)).expect("ray present");
    let cyc: Vec<u64> = (0..g.len()).map(|j| g.cone_indices()[(start + j) % g.len()]).collect();
    c.eq("subdivision by (0,-1)", vec![2, 2, 1, 1], cyc);
    let c3: Vec<i64> = hj_resolve((0, 1), (-3, -1))?.into_iter().map(|r| r.1).collect();
    c.eq("C_3 resolution", vec![-3], c3);
    let a2: Vec<i64> = hj_resolve((0, 1), (-3, -2))?.into_iter().map(|r| r.1).collect();
    c.eq("A_2 resolution", vec![-2, -2], a2);
    let s2 = hirzebruch_fan(2)?;
    let i = s2.position((0, 1)).expect("ray present");
    c.eq("Sigma_2 negative section", qi(-2), s2.self_intersection(i)?);
    let fans = smooth_fans(8, 6);
    let mut bad = 0;
    for f in &fans {
        let total: Q = f.self_intersections().into_iter().sum();
        if total != qi(12 - 3 * f.len() as i64) {
            bad += 1;
        }
    }
    c.check("sum of D_i^2 = 12 - 3r", bad == 0, format!("{} smooth fans, {bad} failures", fans.len()));
    Ok(c.finish("toric"))
}

fn contrib(b: Q, multiplicity: u64) -> Contribution {
    Contribution { b, multiplicity }
}

fn coefficients() -> Result<SuiteReport> {
    let mut c = Collector::default();
    // Boundary of the curve S at points T_2, T_3, T_n, optionally raised by a
    // curve through one of them with multiplicity one.
    let adj = |m_p: u64, contributions: Vec<Contribution>| adjunction_coefficient(&AdjunctionPointDatum { m_p, contributions });
    for n in 3..=5u64 {
        let triple: Vec<String> = [2, 3, n]
            .iter()
            .map(|&m| adj(m, vec![]).map(|x| format_rational(&x)))
            .collect::<Result<_>>()?;
        c.eq(format!("(2,3,{n}) triple"), vec!["1/2".to_string(), "2/3".into(), format!("{}/{n}", n - 1)], triple);
    }
    c.eq("T_2 + (1/3) C_0", q(2, 3), adj(2, vec![contrib(q(1, 3), 1)])?);
    c.eq("T_3 + (1/4) C_0", q(3, 4), adj(3, vec![contrib(q(1, 4), 1)])?);
    c.eq("T_5 + (1/6) C_0", q(5, 6), adj(5, vec![contrib(q(1, 6), 1)])?);
    c.eq("smooth point + (1/2) L_0", q(1, 2), adj(1, vec![contrib(q(1, 2), 1)])?);

    let delta = |m, a| base_pair_coefficient(&FibrationFiberDatum { m, a });
    c.eq("delta(1, 2/3)", q(2, 3), delta(1, q(2, 3))?);
    c.eq("delta(2, 0)", q(1, 2), delta(2, qi(0))?);
    c.eq("delta(2, 1/2)", q(3, 4), delta(2, q(1, 2))?);
    let compat = |m, b, a| check_compatible(&CoverCoeffDatum { m, b, a });
    c.eq("compatible(2, 3/4, 1/2)", true, compat(2, q(3, 4), q(1, 2))?);
    c.eq("compatible(3, 2/3, 0)", true, compat(3, q(2, 3), qi(0))?);
    c.eq("compatible(2, 1/2, 1/2)", false, compat(2, q(1, 2), q(1, 2))?);
    c.eq("pullback(3/4, 2)", q(1, 2), ramification_pullback(&q(3, 4), 2)?);
    c.check("pullback(1/2, 3) rejected", ramification_pullback(&q(1, 2), 3).is_err(), "");

    let standard: Vec<Q> = (1..=24).map(|m| qi(1) - q(1, m)).chain([qi(1)]).collect();
    let mut closure = true;
    let mut round_trip = true;
    let mut identity = true;
    for a in &standard {
        for m in 1..=12u64 {
            closure &= crate::curve::is_standard(&delta(m, a.clone())?);
            if let Ok(up) = ramification_pullback(a, m) {
                if crate::curve::is_standard(&up) {
                    round_trip &= compat(m, a.clone(), up)?;
                }
            }
        }
        for b in &standard {
            identity &= compat(1, b.clone(), a.clone())? == (a == b);
        }
    }
    c.check("delta keeps coefficients standard", closure, "");
    c.check("pullback then compatibility", round_trip, "");
    c.check("identity covers", identity, "");
    Ok(c.finish("coefficients"))
}

fn bundles() -> Result<SuiteReport> {
    let mut c = Collector::default();
    for k in -6..=6i64 {
        let ab = abelianization(&bundle_pi1(k));
        let expected: Vec<BigInt> = if k.abs() > 1 { vec![BigInt::from(k.abs())] } else { vec![] };
        let ok = ab.free_rank == if k == 0 { 3 } else { 2 } && ab.torsion == expected;
        c.check(format!("bundle k={k} abelianization"), ok, ab.to_string());
        let v = is_virtually_abelian(k);
        let witness_ok = match &v.witness {
            None => k == 0,
            Some(w) => w.samples.iter().all(|(l, z)| *z == (k * l * l).to_string()),
        };
        c.check(format!("k={k} virtually abelian iff k = 0"), v.virtually_abelian == (k == 0) && witness_ok, "");
    }
    use PairKind::*;
    let golden = [
        (Elliptic, Elliptic, 3840u64),
        (Sporadic, Elliptic, 360),
        (Toric, Elliptic, 864),
        (Elliptic, Toric, 7200),
        (Sporadic, Toric, 7200),
    ];
    for (f, b, bound) in golden {
        let cert = nori_certificate(f, b);
        c.eq(format!("certificate {f:?}/{b:?}"), bound, cert.index_bound);
    }
    let bounds: BTreeSet<u64> = [Toric, Elliptic, Sporadic]
        .iter()
        .flat_map(|&f| [Toric, Elliptic, Sporadic].map(|b| nori_certificate(f, b).index_bound))
        .collect();
    c.eq("bound set", BTreeSet::from([360, 864, 3840, 7200]), bounds);
    Ok(c.finish("bundles"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for s in SUITES {
            let r = run_suite(s).unwrap();
            assert!(r.passed, "{r:#?}");
        }
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn word_counts() {
        assert_eq!(all_words(2).len(), 1 + 6 + 36);
    }

    #[test]
    fn smooth_fan_census() {
        // P², Σ_0, Σ_1 = Bl P², Σ_2, plus their blow-ups.
        let fans = smooth_fans(4, 2);
        assert_eq!(fans.len(), 4);
    }
}
