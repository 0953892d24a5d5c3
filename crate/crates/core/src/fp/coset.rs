//! Felsch-style Todd–Coxeter coset enumeration.
//!
//! Column `2i` of a table holds the action of generator `i+1`, column `2i+1`
//! that of its inverse. Coset 0 is the subgroup coset.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::{cyclic_reduce, inverse, Word};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationStatus {
    Complete,
    Exceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub generator_count: usize,
    pub rows: Vec<Vec<Option<usize>>>,
    pub status: EnumerationStatus,
}

pub fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Number of cosets when the enumeration finished.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.rows.len())
    }

    pub fn act(&self, coset: usize, letter: i32) -> Option<usize> {
        self.rows.get(coset)?.get(column(letter)).copied().flatten()
    }

    pub fn trace(&self, coset: usize, w: &[i32]) -> Option<usize> {
        w.iter().try_fold(coset, |c, &x| self.act(c, x))
    }

    /// Every relator fixes every coset.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        self.is_complete()
            && (0..self.rows.len())
                .all(|c| p.relators.iter().all(|r| self.trace(c, r) == Some(c)))
    }
}

/// Enumerates the cosets of `⟨subgroup_gens⟩` in the group presented by `p`.
///
/// Running out of room is reported through [`EnumerationStatus::Exceeded`],
/// not as an error.
pub fn coset_enumerate(p: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::pre("max_cosets must be at least 1"));
    }
    let n = p.generator_count() as i32;
    for w in subgroup_gens {
        if w.iter().any(|&x| x == 0 || x.abs() > n) {
            return Err(Error::pre("subgroup generator uses an unknown generator"));
        }
    }
    let mut e = Enumerator::new(p, max_cosets);
    let ok = e.run(subgroup_gens).is_ok();
    Ok(e.into_table(p.generator_count(), ok))
}

struct Overflow;

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    max_rows: usize,
    deductions: Vec<(usize, usize)>,
    rels: Vec<Vec<Vec<usize>>>,
}

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.generator_count();
        let mut conj: BTreeSet<Vec<usize>> = BTreeSet::new();
        for r in &p.relators {
            let r = cyclic_reduce(r);
            for w in [r.clone(), inverse(&r)] {
                for s in 0..w.len() {
                    let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).map(|&x| column(x)).collect();
                    conj.insert(rot);
                }
            }
        }
        let mut rels = vec![Vec::new(); ncols];
        for c in conj {
            rels[c[0]].push(c);
        }
        Enumerator {
            ncols,
            table: vec![vec![NONE; ncols]],
            parent: vec![0],
            live: 1,
            max_live: max_cosets,
            max_rows: max_cosets.saturating_mul(4).max(max_cosets.saturating_add(1024)),
            deductions: Vec::new(),
            rels,
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn find(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, a: usize, x: usize) -> std::result::Result<(), Overflow> {
        if self.live >= self.max_live || self.table.len() >= self.max_rows {
            return Err(Overflow);
        }
        let b = self.table.len();
        self.table.push(vec![NONE; self.ncols]);
        self.parent.push(b);
        self.live += 1;
        self.table[a][x] = b;
        self.table[b][x ^ 1] = a;
        self.deductions.push((a, x));
        Ok(())
    }

    fn run(&mut self, subgroup_gens: &[Word]) -> std::result::Result<(), Overflow> {
        for w in subgroup_gens {
            let cols: Vec<usize> = w.iter().map(|&x| column(x)).collect();
            if !cols.is_empty() {
                self.scan_and_fill(0, &cols)?;
                self.process_deductions();
            }
        }
        let mut a = 0;
        loop {
            while a < self.table.len() {
                if self.alive(a) {
                    for x in 0..self.ncols {
                        if !self.alive(a) {
                            break;
                        }
                        if self.table[a][x] == NONE {
                            self.define(a, x)?;
                            self.process_deductions();
                        }
                    }
                }
                a += 1;
            }
            let gap = (0..self.table.len())
                .find(|&c| self.alive(c) && self.table[c].contains(&NONE));
            match gap {
                Some(c) => a = c,
                None => return Ok(()),
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> std::result::Result<(), Overflow> {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0, w.len());
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                self.coincidence(f, b);
                return Ok(());
            }
            while j > i && self.table[b][w[j - 1] ^ 1] != NONE {
                b = self.table[b][w[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                self.deductions.push((f, w[i]));
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn scan(&mut self, alpha: usize, w: &[usize]) {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0, w.len());
        while i < j && self.table[f][w[i]] != NONE {
            f = self.table[f][w[i]];
            i += 1;
        }
        if i == j {
            self.coincidence(f, alpha);
            return;
        }
        while j > i && self.table[b][w[j - 1] ^ 1] != NONE {
            b = self.table[b][w[j - 1] ^ 1];
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.table[f][w[i]] = b;
            self.table[b][w[i] ^ 1] = f;
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((a, x)) = self.deductions.pop() {
            if !self.alive(a) {
                continue;
            }
            for k in 0..self.rels[x].len() {
                let w = std::mem::take(&mut self.rels[x][k]);
                self.scan(a, &w);
                self.rels[x][k] = w;
                if !self.alive(a) {
                    break;
                }
            }
            if !self.alive(a) {
                continue;
            }
            let b = self.table[a][x];
            if b == NONE {
                continue;
            }
            let xi = x ^ 1;
            for k in 0..self.rels[xi].len() {
                let w = std::mem::take(&mut self.rels[xi][k]);
                self.scan(b, &w);
                self.rels[xi][k] = w;
                if !self.alive(b) {
                    break;
                }
            }
        }
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (phi, psi) = (self.find(k), self.find(l));
        if phi == psi {
            return;
        }
        let (mu, nu) = (phi.min(psi), phi.max(psi));
        self.parent[nu] = mu;
        self.live -= 1;
        queue.push(nu);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        if self.find(a) == self.find(b) {
            return;
        }
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let g = queue[qi];
            qi += 1;
            for x in 0..self.ncols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                if self.table[d][x ^ 1] == g {
                    self.table[d][x ^ 1] = NONE;
                }
                let mu = self.find(g);
                let nu = self.find(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][x ^ 1] != NONE {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Renumbers live cosets breadth-first from coset 0, scanning columns in order.
    fn into_table(mut self, generator_count: usize, complete: bool) -> CosetTable {
        let rows = self.table.len();
        let mut order = vec![0usize];
        let mut newid = vec![NONE; rows];
        newid[0] = 0;
        let mut head = 0;
        loop {
            while head < order.len() {
                let c = order[head];
                head += 1;
                for x in 0..self.ncols {
                    let t = self.table[c][x];
                    if t == NONE {
                        continue;
                    }
                    let t = self.find(t);
                    if newid[t] == NONE {
                        newid[t] = order.len();
                        order.push(t);
                    }
                }
            }
            // Only possible for partial tables: live cosets unreachable from 0.
            match (0..rows).find(|&c| self.alive(c) && newid[c] == NONE) {
                Some(c) => {
                    newid[c] = order.len();
                    order.push(c);
                }
                None => break,
            }
        }
        let mut out = Vec::with_capacity(order.len());
        for &c in &order {
            let mut row = Vec::with_capacity(self.ncols);
            for x in 0..self.ncols {
                let t = self.table[c][x];
                row.push(if t == NONE { None } else { Some(newid[self.find(t)]) });
            }
            out.push(row);
        }
        CosetTable {
            generator_count,
            rows: out,
            status: if complete { EnumerationStatus::Complete } else { EnumerationStatus::Exceeded },
        }
    }
}
