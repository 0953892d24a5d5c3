//! Permutation groups: Schreier–Sims, normal closures and series.
//!
//! Points are `0..degree`; permutations act on the right, so in `mul(a, b)`
//! the permutation `a` is applied first.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::coset::CosetTable;
use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub const DEFAULT_ORDER_BOUND: u128 = 1_000_000;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn mul(a: &[usize], b: &[usize]) -> Perm {
    a.iter().map(|&i| b[i]).collect()
}

pub fn inv(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn is_identity(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(i, &j)| i == j)
}

pub fn perm_commutator(a: &[usize], b: &[usize]) -> Perm {
    mul(&mul(a, b), &mul(&inv(a), &inv(b)))
}

pub fn element_order(a: &[usize]) -> u64 {
    let mut seen = vec![false; a.len()];
    let mut l: u64 = 1;
    for i in 0..a.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0u64;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = a[j];
            len += 1;
        }
        l = num_integer::lcm(l, len);
    }
    l
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAnalysis {
    pub order: u128,
    /// Orders of `G, G', G'', ...`, stopping at the trivial group or at the
    /// first repeated term.
    pub derived_series: Vec<u128>,
    pub is_abelian: bool,
    pub is_metabelian: bool,
    pub nilpotency_class: Option<usize>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            let mut hit = vec![false; degree];
            if g.len() != degree || g.iter().any(|&j| j >= degree || std::mem::replace(&mut hit[j], true)) {
                return Err(Error::pre("generator is not a permutation of the stated degree"));
            }
        }
        Ok(PermGroup { degree, generators })
    }

    /// Generators given as products of disjoint cycles on points `1..=degree`.
    pub fn from_cycles(degree: usize, gens: &[&[&[usize]]]) -> Result<Self> {
        let mut out = Vec::new();
        for cycles in gens {
            let mut p = identity(degree);
            for cyc in cycles.iter() {
                for (k, &x) in cyc.iter().enumerate() {
                    let y = cyc[(k + 1) % cyc.len()];
                    if x == 0 || x > degree || y == 0 || y > degree {
                        return Err(Error::pre("cycle point out of range"));
                    }
                    p[x - 1] = y - 1;
                }
            }
            out.push(p);
        }
        Self::new(degree, out)
    }

    pub fn chain(&self) -> StabChain {
        let mut c = StabChain::new(self.degree);
        for g in &self.generators {
            c.insert(g);
        }
        c
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        self.chain().contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..].iter().all(|b| mul(a, b) == mul(b, a))
        })
    }

    /// Smallest subgroup of `self` that contains `elems` and is normalised by `self`.
    pub fn normal_closure(&self, elems: &[Perm]) -> PermGroup {
        let mut chain = StabChain::new(self.degree);
        let mut gens: Vec<Perm> = Vec::new();
        for e in elems {
            if chain.insert(e) {
                gens.push(e.clone());
            }
        }
        let mut i = 0;
        while i < gens.len() {
            for s in &self.generators {
                let c = mul(&mul(&inv(s), &gens[i]), s);
                if chain.insert(&c) {
                    gens.push(c);
                }
            }
            i += 1;
        }
        PermGroup { degree: self.degree, generators: gens }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = perm_commutator(a, b);
                if !is_identity(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `[h, g]` for `h` in `sub` and `g` in `self`, normally closed in `self`.
    pub fn commutator_with(&self, sub: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        for h in &sub.generators {
            for g in &self.generators {
                let c = perm_commutator(h, g);
                if !is_identity(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn analyze(&self, order_bound: u128) -> Result<GroupAnalysis> {
        let order = self.order();
        if order > order_bound {
            return Err(Error::Budget(format!("group order {order} exceeds bound {order_bound}")));
        }
        let mut derived_series = vec![order];
        let mut cur = self.clone();
        while *derived_series.last().unwrap() > 1 {
            let next = cur.derived_subgroup();
            let o = next.order();
            derived_series.push(o);
            if o == derived_series[derived_series.len() - 2] {
                break;
            }
            cur = next;
        }
        // The series stops at 1 or repeats, so the last available term of the
        // first three is the order of G''.
        let is_metabelian = derived_series.iter().take(3).next_back() == Some(&1);
        let mut nilpotency_class = Some(0);
        if order > 1 {
            nilpotency_class = None;
            let mut term = self.clone();
            let mut last = order;
            for c in 1.. {
                term = self.commutator_with(&term);
                let o = term.order();
                if o == 1 {
                    nilpotency_class = Some(c);
                    break;
                }
                if o == last {
                    break;
                }
                last = o;
            }
        }
        Ok(GroupAnalysis {
            order,
            derived_series,
            is_abelian: self.is_abelian(),
            is_metabelian,
            nilpotency_class,
        })
    }

    /// All elements, breadth-first from the identity; `None` past `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Perm>> {
        let id = identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = mul(&x, g);
                if seen.insert(y.clone()) {
                    if out.len() >= limit {
                        return None;
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Some(out)
    }
}

/// Action of each generator on the cosets of a complete table.
pub fn regular_representation(table: &CosetTable) -> Result<PermGroup> {
    if !table.is_complete() {
        return Err(Error::pre("coset table is not complete"));
    }
    let n = table.rows.len();
    let gens = (0..table.generator_count)
        .map(|g| (0..n).map(|c| table.rows[c][2 * g].expect("complete row")).collect())
        .collect();
    PermGroup::new(n, gens)
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    trans: Vec<Option<Perm>>,
}

/// Base and strong generating set built by deterministic Schreier–Sims.
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(n: usize) -> Self {
        StabChain { n, levels: Vec::new() }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn sift(&self, g: &[usize], from: usize) -> Perm {
        let mut h = g.to_vec();
        for l in &self.levels[from.min(self.levels.len())..] {
            let beta = h[l.point];
            match &l.trans[beta] {
                Some(u) => h = mul(&h, &inv(u)),
                None => return h,
            }
        }
        h
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        g.len() == self.n && is_identity(&self.sift(g, 0))
    }

    /// Adds `g` to the group; returns false when it was already a member.
    pub fn insert(&mut self, g: &[usize]) -> bool {
        let h = self.sift(g, 0);
        if is_identity(&h) {
            return false;
        }
        self.add_gen(0, h);
        true
    }

    fn add_gen(&mut self, level: usize, g: Perm) {
        if level == self.levels.len() {
            let point = g.iter().enumerate().position(|(i, &j)| i != j).expect("nontrivial");
            let mut trans = vec![None; self.n];
            trans[point] = Some(identity(self.n));
            self.levels.push(Level { point, gens: Vec::new(), orbit: vec![point], trans });
        }
        self.levels[level].gens.push(g);
        let new_gen = self.levels[level].gens.len() - 1;
        let mut pending: Vec<(usize, usize)> =
            (0..self.levels[level].orbit.len()).map(|b| (b, new_gen)).collect();
        while let Some((bi, si)) = pending.pop() {
            let lvl = &self.levels[level];
            let beta = lvl.orbit[bi];
            let s = &lvl.gens[si];
            let gamma = s[beta];
            let prod = mul(lvl.trans[beta].as_ref().unwrap(), s);
            match &lvl.trans[gamma] {
                None => {
                    let lvl = &mut self.levels[level];
                    lvl.trans[gamma] = Some(prod);
                    lvl.orbit.push(gamma);
                    let idx = lvl.orbit.len() - 1;
                    pending.extend((0..lvl.gens.len()).map(|sj| (idx, sj)));
                }
                Some(u) => {
                    let schreier = mul(&prod, &inv(u));
                    let h = self.sift(&schreier, level + 1);
                    if !is_identity(&h) {
                        self.add_gen(level + 1, h);
                    }
                }
            }
        }
    }
}
