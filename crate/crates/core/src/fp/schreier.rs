//! Reidemeister–Schreier rewriting from a complete coset table.

use serde::{Deserialize, Serialize};

use super::coset::{coset_enumerate, CosetTable};
use super::presentation::Presentation;
use super::snf::{abelianization, AbelianInvariants};
use super::word::{free_reduce, inverse, Word};
use crate::error::{Error, Result};

/// A presentation of a finite-index subgroup together with the words, in the
/// parent generators, that each subgroup generator stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    pub generator_words: Vec<Word>,
}

pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation> {
    if !table.is_complete() {
        return Err(Error::pre("Reidemeister-Schreier needs a complete coset table"));
    }
    let n = table.rows.len();
    let ngens = p.generator_count();
    // Spanning tree: coset reps as words, tree edges marked by (coset, generator).
    let mut rep: Vec<Option<Word>> = vec![None; n];
    rep[0] = Some(Vec::new());
    let mut tree = vec![vec![false; ngens]; n];
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for g in 1..=ngens as i32 {
            for letter in [g, -g] {
                let d = table.act(c, letter).expect("complete table");
                if rep[d].is_none() {
                    let mut w = rep[c].clone().unwrap();
                    w.push(letter);
                    rep[d] = Some(w);
                    queue.push(d);
                    if letter > 0 {
                        tree[c][(g - 1) as usize] = true;
                    } else {
                        tree[d][(g - 1) as usize] = true;
                    }
                }
            }
        }
    }
    let rep: Vec<Word> = rep.into_iter().map(|r| r.expect("connected table")).collect();

    let mut index = vec![vec![0i32; ngens]; n];
    let mut generator_words = Vec::new();
    for c in 0..n {
        for g in 0..ngens {
            if !tree[c][g] {
                let d = table.act(c, g as i32 + 1).unwrap();
                generator_words.push(free_reduce(
                    &[rep[c].as_slice(), &[g as i32 + 1], &inverse(&rep[d])].concat(),
                ));
                index[c][g] = generator_words.len() as i32;
            }
        }
    }
    let rewrite = |start: usize, w: &[i32]| -> Word {
        let mut out = Vec::new();
        let mut c = start;
        for &x in w {
            let g = x.unsigned_abs() as usize - 1;
            if x > 0 {
                if index[c][g] != 0 {
                    out.push(index[c][g]);
                }
                c = table.act(c, x).unwrap();
            } else {
                let d = table.act(c, x).unwrap();
                if index[d][g] != 0 {
                    out.push(-index[d][g]);
                }
                c = d;
            }
        }
        out
    };
    let mut relators = Vec::new();
    for c in 0..n {
        for r in &p.relators {
            relators.push(rewrite(c, r));
        }
    }
    let presentation = Presentation::with_count(generator_words.len(), relators)?;
    Ok(SubgroupPresentation { presentation, generator_words })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub index: usize,
    pub abelianization: AbelianInvariants,
}

/// Index and abelianization of `⟨gens⟩`, or a budget error if enumeration
/// does not finish.
pub fn subgroup_report(p: &Presentation, gens: &[Word], max_cosets: usize) -> Result<SubgroupReport> {
    let table = coset_enumerate(p, gens, max_cosets)?;
    let Some(index) = table.index() else {
        return Err(Error::Budget(format!(
            "coset enumeration did not close within {max_cosets} cosets"
        )));
    };
    let sub = reidemeister_schreier(p, &table)?;
    Ok(SubgroupReport { index, abelianization: abelianization(&sub.presentation) })
}

/// Checks a claimed index and, optionally, the rank of the subgroup's
/// abelianization.
///
/// The budget is `claimed_index` times a safety factor, capped by `max_cosets`.
pub fn verify_subgroup_claim(
    p: &Presentation,
    gens: &[Word],
    claimed_index: usize,
    claimed_abelian_rank: Option<usize>,
    max_cosets: usize,
) -> Result<bool> {
    let budget = claimed_index.saturating_mul(64).max(1024).min(max_cosets.max(1));
    let table = coset_enumerate(p, gens, budget)?;
    let Some(index) = table.index() else {
        if budget < max_cosets {
            // Larger than the safety margin around the claim, so the claim is wrong
            // unless the subgroup has infinite index, which is also a refutation.
            return Ok(false);
        }
        return Err(Error::Budget(format!("coset enumeration exceeded {budget} cosets")));
    };
    if index != claimed_index {
        return Ok(false);
    }
    if let Some(rank) = claimed_abelian_rank {
        let sub = reidemeister_schreier(p, &table)?;
        if abelianization(&sub.presentation).rank() != rank {
            return Ok(false);
        }
    }
    Ok(true)
}
