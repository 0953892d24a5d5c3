//! String rewriting for `H_k`, used as an independent check on the closed-form
//! multiplication law.
//!
//! Letters are `a = 1, b = 2, c = 3`, negative for inverses. The rules sort a
//! word into `a^x b^y c^z`:
//!
//! ```text
//! ba -> ab c^-k    bA -> Ab c^k    Ba -> aB c^k    BA -> AB c^-k
//! c^±1 x -> x c^±1   (x in a, A, b, B)
//! x x^-1 -> empty
//! ```
//!
//! The leftmost redex is always rewritten first.

use num_bigint::BigInt;

use super::heisenberg::HeisenbergElement;
use crate::error::{Error, Result};
use crate::fp::word::power;
use crate::fp::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: [i32; 2],
    pub rhs: Word,
}

/// The rule list in priority order.
pub fn rules(k: i64) -> Vec<Rule> {
    let c = |e: i64| power(&[3], e);
    let mut out = vec![
        Rule { lhs: [2, 1], rhs: [vec![1, 2], c(-k)].concat() },
        Rule { lhs: [2, -1], rhs: [vec![-1, 2], c(k)].concat() },
        Rule { lhs: [-2, 1], rhs: [vec![1, -2], c(k)].concat() },
        Rule { lhs: [-2, -1], rhs: [vec![-1, -2], c(-k)].concat() },
    ];
    for z in [3, -3] {
        for x in [1, -1, 2, -2] {
            out.push(Rule { lhs: [z, x], rhs: vec![x, z] });
        }
    }
    for x in [1, 2, 3] {
        out.push(Rule { lhs: [x, -x], rhs: vec![] });
        out.push(Rule { lhs: [-x, x], rhs: vec![] });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewritten {
    pub word: Word,
    pub steps: usize,
}

/// Rewrites to the irreducible form.
pub fn rewrite(k: i64, w: &[i32]) -> Result<Rewritten> {
    if let Some(&x) = w.iter().find(|x| !(1..=3).contains(&x.abs())) {
        return Err(Error::pre(format!("letter {x} is not one of a, b, c")));
    }
    let rules = rules(k);
    let mut word = w.to_vec();
    let mut steps = 0;
    let mut i = 0;
    while i + 1 < word.len() {
        let pair = [word[i], word[i + 1]];
        match rules.iter().find(|r| r.lhs == pair) {
            Some(r) => {
                word.splice(i..i + 2, r.rhs.iter().copied());
                steps += 1;
                // Everything left of i - 1 is untouched and was irreducible.
                i = i.saturating_sub(1);
            }
            None => i += 1,
        }
    }
    Ok(Rewritten { word, steps })
}

/// Reads exponents off an irreducible word.
pub fn read_normal_form(k: i64, w: &[i32]) -> Result<HeisenbergElement> {
    let mut exps = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
    let mut last = 0usize;
    for &x in w {
        let g = x.unsigned_abs() as usize;
        if g < last {
            return Err(Error::Verification(format!("word is not sorted at letter {x}")));
        }
        last = g;
        exps[g - 1] += x.signum();
    }
    let [x, y, z] = exps;
    Ok(HeisenbergElement::new(k, x, y, z))
}

/// Normal form of a word computed purely by rewriting.
pub fn rewrite_to_element(k: i64, w: &[i32]) -> Result<HeisenbergElement> {
    read_normal_form(k, &rewrite(k, w)?.word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_products() {
        for k in -3..=3 {
            assert_eq!(rewrite_to_element(k, &[1, 2]).unwrap().triple(), "1,1,0");
            assert_eq!(rewrite_to_element(k, &[2, 1]).unwrap().triple(), format!("1,1,{}", -k));
            let comm = crate::fp::word::commutator(&[1], &[2]);
            assert_eq!(rewrite_to_element(k, &comm).unwrap().triple(), format!("0,0,{k}"));
        }
    }

    #[test]
    fn irreducible_forms_are_sorted() {
        let r = rewrite(2, &[3, 2, -1, 3, -2, 1, -3]).unwrap();
        assert!(r.word.windows(2).all(|p| p[0].abs() <= p[1].abs()));
        assert!(read_normal_form(0, &[2, 1]).is_err());
        assert!(rewrite(1, &[4]).is_err());
    }

    #[test]
    fn agrees_with_closed_form_short_words() {
        let letters = [1, -1, 2, -2, 3, -3];
        for k in -2..=3 {
            let mut words: Vec<Word> = vec![vec![]];
            for _ in 0..4 {
                let mut next = Vec::new();
                for w in &words {
                    for &l in &letters {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
                for w in &next {
                    assert_eq!(
                        rewrite_to_element(k, w).unwrap(),
                        HeisenbergElement::from_word(k, w).unwrap(),
                        "k={k} w={w:?}"
                    );
                }
                words = next;
            }
        }
    }
}
