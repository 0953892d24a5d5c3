//! Explicit finite-index subgroup constructions, each checked two ways.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::heisenberg::{h_commutator, heisenberg_presentation, mul_unchecked, HeisenbergElement};
use super::rewriting::rewrite_to_element;
use crate::error::{Error, Result};
use crate::fp::word::{commutator, power};
use crate::fp::{coset_enumerate, subgroup_report, verify_subgroup_claim, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCheck {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub gadget: String,
    pub group: String,
    pub subgroup: Vec<String>,
    pub index: u64,
    /// Heisenberg parameter of the constructed subgroup, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<i64>,
    pub checks: Vec<GadgetCheck>,
    pub passed: bool,
}

struct Checks(Vec<GadgetCheck>);

impl Checks {
    fn push(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let passed = expected == observed;
        self.0.push(GadgetCheck { name: name.into(), expected, observed, passed });
    }

    fn flag(&mut self, name: &str, ok: bool) {
        self.push(name, true, ok);
    }

    fn finish(self, gadget: &str, p: &Presentation, gens: &[Word], index: u64, parameter: Option<i64>) -> GadgetReport {
        let passed = self.0.iter().all(|c| c.passed);
        GadgetReport {
            gadget: gadget.into(),
            group: p.to_text(),
            subgroup: gens.iter().map(|w| p.word_to_string(w)).collect(),
            index,
            parameter,
            checks: self.0,
            passed,
        }
    }
}

/// `⟨a^{2N}, b^2, c⟩ ≤ H_k`: index `4N`, and `[a^{2N}, b^2] = c^{4kN}`, so it is
/// Heisenberg-style with parameter `4kN`.
pub fn lemma_42_gadget(k: i64, n: u64, max_cosets: usize) -> Result<GadgetReport> {
    if n == 0 {
        return Err(Error::pre("N must be positive"));
    }
    let p = heisenberg_presentation(k);
    let two_n = 2 * n as i64;
    let gens: Vec<Word> = vec![power(&[1], two_n), power(&[2], 2), vec![3]];
    let det = 2 * two_n as u64;
    let mut checks = Checks(Vec::new());
    checks.push("index by determinant", 4 * n, det);

    let table = coset_enumerate(&p, &gens, max_cosets)?;
    let Some(index) = table.index() else {
        return Err(Error::Budget(format!("coset enumeration exceeded {max_cosets} cosets")));
    };
    checks.push("index by coset enumeration", det, index);

    let big_a = HeisenbergElement::a(k).pow(two_n);
    let big_b = HeisenbergElement::b(k).pow(2);
    let comm = h_commutator(&big_a, &big_b)?;
    let parameter = 4 * k * n as i64;
    checks.push("[a^2N, b^2]", format!("0,0,{parameter}"), comm.triple());
    let by_rewriting = rewrite_to_element(k, &commutator(&gens[0], &gens[1]))?;
    checks.push("[a^2N, b^2] by rewriting", comm.triple(), by_rewriting.triple());

    // Conjugates of the generators by a^±1, b^±1 keep x ≡ 0 mod 2N and y ≡ 0 mod 2.
    let in_sub = |u: &HeisenbergElement| {
        u.x.is_multiple_of(&BigInt::from(two_n)) && u.y.is_multiple_of(&BigInt::from(2))
    };
    let mut normal = true;
    for g in [&big_a, &big_b, &HeisenbergElement::c(k)] {
        for t in [HeisenbergElement::a(k), HeisenbergElement::b(k)] {
            for t in [t.clone(), t.inverse()] {
                let conj = mul_unchecked(&mul_unchecked(&t, g), &t.inverse());
                normal &= in_sub(&conj);
            }
        }
    }
    checks.flag("normal", normal);
    Ok(checks.finish("lemma_42", &p, &gens, det, Some(parameter)))
}

pub const LEMMA_43_GROUP: &str = "<s,t,b,c | s^2, t^2, [s,t], [b,s], [b,t], [c,s], [c,t], [b,c]s^-1>";

/// In `K`, the subgroup `⟨s, t, b^2, c^2⟩` has index 4 and abelianization
/// `(ℤ/2)^2 ⊕ ℤ^2`, and it is abelian since `[b^2, c^2] = s^4 = 1`.
pub fn lemma_43_gadget(n: u64, max_cosets: usize) -> Result<GadgetReport> {
    if n != 1 {
        return Err(Error::pre("only the N = 1 instance is modelled"));
    }
    let p = Presentation::parse(LEMMA_43_GROUP)?;
    let (s, t, b, c) = (1, 2, 3, 4);
    let gens: Vec<Word> = vec![vec![s], vec![t], power(&[b], 2), power(&[c], 2)];
    let mut checks = Checks(Vec::new());
    checks.flag("index 4 and abelian rank 4", verify_subgroup_claim(&p, &gens, 4, Some(4), max_cosets)?);
    let report = subgroup_report(&p, &gens, max_cosets)?;
    checks.push("subgroup abelianization", "Z/2^2 + Z^2", describe(&report.abelianization));

    // ⟨b, c, s⟩ is G_{2,1} under b ↦ a, c ↦ b, s ↦ c; t is a central Z/2 factor.
    let rewritten = rewrite_to_element(1, &commutator(&power(&[1], 2), &power(&[2], 2)))?;
    let z = rewritten.z.mod_floor(&BigInt::from(2));
    checks.push("[b^2, c^2] exponent of s", "4", rewritten.z.to_string());
    checks.flag("[b^2, c^2] = 1", rewritten.x.is_zero() && rewritten.y.is_zero() && z.is_zero());

    // s, t span a Klein four-group: its regular action has four points.
    let klein = Presentation::parse("<s,t | s^2, t^2, [s,t]>")?;
    let order = coset_enumerate(&klein, &[], 64)?.index();
    checks.push("order of <s,t>", 4, order.unwrap_or(0));
    let klein_in_k = subgroup_report(&p, &[vec![s], vec![t]], max_cosets);
    checks.flag("<s,t> has infinite index in K", klein_in_k.is_err());
    Ok(checks.finish("lemma_43", &p, &gens, 4, None))
}

fn describe(inv: &crate::fp::AbelianInvariants) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < inv.torsion.len() {
        let d = &inv.torsion[i];
        let run = inv.torsion[i..].iter().take_while(|e| *e == d).count();
        parts.push(if run > 1 { format!("Z/{d}^{run}") } else { format!("Z/{d}") });
        i += run;
    }
    match inv.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() { "1".into() } else { parts.join(" + ") }
}

pub const LEMMA_44_GROUP: &str = "<u,s,b,c | s^2, (su)^2, bub^-1u, [c,u], [b,s], [c,s], [b,c]>";
pub const LEMMA_44_QUOTIENT: &str = "<s,b,c | s^2, [b,s], [c,s], [b,c]>";

/// `u^n s^e b^x c^y` in the group `LEMMA_44_GROUP`, with `e ∈ {0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralExtensionElement {
    pub n: i64,
    pub e: u8,
    pub x: i64,
    pub y: i64,
}

impl DihedralExtensionElement {
    pub const IDENTITY: Self = DihedralExtensionElement { n: 0, e: 0, x: 0, y: 0 };

    pub fn generator(letter: i32) -> Self {
        let g = match letter.abs() {
            1 => Self { n: 1, ..Self::IDENTITY },
            2 => Self { e: 1, ..Self::IDENTITY },
            3 => Self { x: 1, ..Self::IDENTITY },
            _ => Self { y: 1, ..Self::IDENTITY },
        };
        if letter < 0 { g.inverse() } else { g }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let flip = (self.e as i64 + self.x).rem_euclid(2) == 1;
        DihedralExtensionElement {
            n: self.n + if flip { -o.n } else { o.n },
            e: (self.e + o.e) % 2,
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    pub fn inverse(&self) -> Self {
        let flip = (self.e as i64 + self.x).rem_euclid(2) == 1;
        DihedralExtensionElement {
            n: if flip { self.n } else { -self.n },
            e: self.e,
            x: -self.x,
            y: -self.y,
        }
    }

    pub fn eval(w: &[i32]) -> Self {
        w.iter().fold(Self::IDENTITY, |acc, &l| acc.mul(&Self::generator(l)))
    }
}

/// `H = ⟨u, b^2, c^2⟩` has index 8 in `LEMMA_44_GROUP`; it is the preimage of
/// `⟨b^2, c^2⟩` under the quotient by `⟨u⟩`. Its commutator data is trivial, so
/// the Heisenberg parameter is 0.
pub fn lemma_44_gadget(max_cosets: usize) -> Result<GadgetReport> {
    let p = Presentation::parse(LEMMA_44_GROUP)?;
    let (u, s, b, c) = (1, 2, 3, 4);
    let gens: Vec<Word> = vec![vec![u], power(&[b], 2), power(&[c], 2)];
    let mut checks = Checks(Vec::new());

    // The normal form model satisfies every relator.
    let model_ok = p.relators.iter().all(|r| DihedralExtensionElement::eval(r) == DihedralExtensionElement::IDENTITY);
    checks.flag("normal form satisfies relators", model_ok);

    // Step one: in S = G/⟨u⟩, ⟨s, b^2, c^2⟩ has index 4 and is Z/2 + Z^2.
    let quotient = Presentation::parse(LEMMA_44_QUOTIENT)?;
    let step = subgroup_report(&quotient, &[vec![1], power(&[2], 2), power(&[3], 2)], max_cosets)?;
    checks.push("index of <s,b^2,c^2> in S", 4, step.index);
    checks.push("abelianization of <s,b^2,c^2>", "Z/2 + Z^2", describe(&step.abelianization));

    // Step two: the preimage of ⟨b^2, c^2⟩ in G.
    let table = coset_enumerate(&p, &gens, max_cosets)?;
    let Some(index) = table.index() else {
        return Err(Error::Budget(format!("coset enumeration exceeded {max_cosets} cosets")));
    };
    checks.push("index by coset enumeration", 8, index);
    let in_h = |g: &DihedralExtensionElement| g.e == 0 && g.x % 2 == 0 && g.y % 2 == 0;
    // Greedy coset representatives over a box of normal forms.
    let mut reps: Vec<DihedralExtensionElement> = Vec::new();
    for n in -2..=2 {
        for e in 0..2u8 {
            for x in -2..=2 {
                for y in -2..=2 {
                    let g = DihedralExtensionElement { n, e, x, y };
                    if !reps.iter().any(|r| in_h(&r.inverse().mul(&g))) {
                        reps.push(g);
                    }
                }
            }
        }
    }
    checks.push("index by normal form", 8, reps.len());
    let mut normal = true;
    for g in &gens {
        let g = DihedralExtensionElement::eval(g);
        for l in [u, s, b, c, -u, -b, -c] {
            let t = DihedralExtensionElement::generator(l);
            normal &= in_h(&t.mul(&g).mul(&t.inverse()));
        }
    }
    checks.flag("normal", normal);

    // Elements u^n s are involutions, so ⟨u⟩ is the set of elements of infinite
    // order in ⟨u, s⟩ together with 1, hence characteristic there.
    let s_el = DihedralExtensionElement::generator(s);
    let involutions = (-20..=20).all(|n| {
        let g = DihedralExtensionElement { n, ..DihedralExtensionElement::IDENTITY }.mul(&s_el);
        g.mul(&g) == DihedralExtensionElement::IDENTITY
    });
    checks.flag("u^n s are involutions", involutions);
    let u_el = DihedralExtensionElement::generator(u);
    let mut acc = DihedralExtensionElement::IDENTITY;
    let mut torsion_free = true;
    for _ in 0..40 {
        acc = acc.mul(&u_el);
        torsion_free &= acc != DihedralExtensionElement::IDENTITY;
    }
    checks.flag("u has infinite order", torsion_free);

    let comm = DihedralExtensionElement::eval(&commutator(&gens[1], &gens[2]));
    checks.flag("[b^2, c^2] lies in <u>", comm.e == 0 && comm.x == 0 && comm.y == 0);
    Ok(checks.finish("lemma_44", &p, &gens, 8, Some(comm.n)))
}
