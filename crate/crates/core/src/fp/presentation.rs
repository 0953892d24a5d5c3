//! Finite presentations and their text / JSON forms.
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! presentation := '<' gens? ( '|' relations? )? '>'
//! gens         := ident ( ',' ident )*
//! relations    := relation ( ',' relation )*
//! relation     := word ( '=' word )?
//! word         := '1' | factor*
//! factor       := atom ( '^' integer )?
//! atom         := ident | IDENT | '(' word ')' | '[' word ',' word ']'
//! ident        := lowercase letter followed by digits
//! ```
//!
//! An uppercase identifier denotes the inverse of its lowercase generator,
//! `[x,y]` is `x y x^-1 y^-1`, and `u = v` becomes the relator `u v^-1`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::word::{commutator, cyclic_reduce, free_reduce, inverse, power, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation; relators are freely reduced and empty ones dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_ident(g) {
                return Err(Error::parse(format!("invalid generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::parse(format!("duplicate generator {g:?}")));
            }
        }
        let n = generators.len() as i32;
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&bad) = r.iter().find(|&&x| x == 0 || x.abs() > n) {
                return Err(Error::parse(format!("generator index {bad} out of range")));
            }
            let r = free_reduce(&r);
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation { generators, relators: rels })
    }

    /// Generators named `x1, x2, ...`.
    pub fn with_count(n: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        p.gens = self.generators.clone();
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(Error::parse(format!("trailing input in word {text:?}")));
        }
        Ok(free_reduce(&w))
    }

    /// Accepts `{"generators": [...], "relators": [...]}` where each relator is
    /// either an array of signed indices or a word string.
    pub fn from_json(v: &Value) -> Result<Self> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("presentation JSON needs a generators array"))?;
        let generators = gens
            .iter()
            .map(|g| {
                g.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse("generator names must be strings"))
            })
            .collect::<Result<Vec<_>>>()?;
        let skeleton = Presentation::new(generators.clone(), vec![])?;
        let mut relators = Vec::new();
        if let Some(rels) = v.get("relators") {
            let rels = rels
                .as_array()
                .ok_or_else(|| Error::parse("relators must be an array"))?;
            for r in rels {
                relators.push(json_word(&skeleton, r)?);
            }
        }
        Presentation::new(generators, relators)
    }

    pub fn word_to_string(&self, w: &[i32]) -> String {
        word_text(&self.generators, w)
    }

    /// Tietze elimination: while some relator contains a generator exactly
    /// once, solve for that generator and substitute it everywhere else.
    /// Shorter relators are used first, and within a relator the generator with
    /// the largest index.
    /// Relators come out cyclically reduced and deduplicated.
    pub fn eliminate_generators(&self) -> Presentation {
        let mut gens = self.generators.clone();
        let mut rels = tidy(self.relators.clone());
        loop {
            let mut order: Vec<usize> = (0..rels.len()).collect();
            order.sort_by_key(|&i| rels[i].len());
            let found = order.into_iter().find_map(|ri| {
                (1..=gens.len() as i32)
                    .rev()
                    .find(|&g| rels[ri].iter().filter(|x| x.abs() == g).count() == 1)
                    .map(|g| (ri, g))
            });
            let Some((ri, g)) = found else { break };
            let r = rels.remove(ri);
            let pos = r.iter().position(|x| x.abs() == g).unwrap();
            let rot: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
            let replacement = if rot[0] > 0 { inverse(&rot[1..]) } else { rot[1..].to_vec() };
            let replacement_inv = inverse(&replacement);
            let renumber = |x: i32| if x.abs() > g { x - x.signum() } else { x };
            rels = tidy(
                rels.into_iter()
                    .map(|w| {
                        w.into_iter()
                            .flat_map(|x| {
                                if x == g {
                                    replacement.clone()
                                } else if x == -g {
                                    replacement_inv.clone()
                                } else {
                                    vec![x]
                                }
                            })
                            .map(renumber)
                            .collect()
                    })
                    .collect(),
            );
            gens.remove(g as usize - 1);
        }
        Presentation { generators: gens, relators: rels }
    }

    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        format!("<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

fn tidy(rels: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for r in rels {
        let r = cyclic_reduce(&r);
        if !r.is_empty() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

pub(crate) fn json_word(p: &Presentation, r: &Value) -> Result<Word> {
    match r {
        Value::String(s) => p.parse_word(s),
        Value::Array(xs) => xs
            .iter()
            .map(|x| {
                x.as_i64()
                    .filter(|&i| i != 0 && i.unsigned_abs() as usize <= p.generator_count())
                    .map(|i| i as i32)
                    .ok_or_else(|| Error::parse(format!("bad letter {x} in word")))
            })
            .collect::<Result<Word>>()
            .map(|w| free_reduce(&w)),
        _ => Err(Error::parse("a word must be a string or an array of integers")),
    }
}

/// Renders a word with run-length powers, e.g. `a^2b^-1`.
pub fn word_text(gens: &[String], w: &[i32]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = (j - i) as i64 * w[i].signum() as i64;
        out.push_str(&gens[w[i].unsigned_abs() as usize - 1]);
        if run != 1 {
            out.push_str(&format!("^{run}"));
        }
        i = j;
    }
    out
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_digit())
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    gens: Vec<String>,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, gens: Vec::new() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::parse(format!(
                "expected {c:?} at offset {}, found {:?}",
                self.pos, other
            ))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(Error::parse(format!("expected identifier at offset {start}"))),
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect('<')?;
        if !matches!(self.peek(), Some('|') | Some('>')) {
            loop {
                let g = self.ident()?;
                if !valid_ident(&g) {
                    return Err(Error::parse(format!("invalid generator name {g:?}")));
                }
                self.gens.push(g);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        let mut relators = Vec::new();
        if self.peek() == Some('|') {
            self.pos += 1;
            if self.peek() != Some('>') {
                loop {
                    let lhs = self.word()?;
                    let rel = if self.peek() == Some('=') {
                        self.pos += 1;
                        let rhs = self.word()?;
                        [lhs, inverse(&rhs)].concat()
                    } else {
                        lhs
                    };
                    relators.push(rel);
                    if self.peek() == Some(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        self.expect('>')?;
        if self.peek().is_some() {
            return Err(Error::parse("trailing input after presentation"));
        }
        Presentation::new(std::mem::take(&mut self.gens), relators)
    }

    fn word(&mut self) -> Result<Word> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut w = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || c == '(' || c == '[' {
                w.extend(self.factor()?);
            } else if c == '*' || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                commutator(&x, &y)
            }
            _ => {
                let name = self.ident()?;
                let lower = name.to_ascii_lowercase();
                let idx = self
                    .gens
                    .iter()
                    .position(|g| *g == lower)
                    .ok_or_else(|| Error::parse(format!("unknown generator {name:?}")))?;
                let letter = idx as i32 + 1;
                if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                    vec![-letter]
                } else {
                    vec![letter]
                }
            }
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            Ok(power(&atom, n))
        } else {
            Ok(atom)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::parse(format!("expected integer exponent at offset {start}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_bundle_presentation() {
        let p = Presentation::parse("<a,b,c | [a,b]c^-3, [a,c], [b,c]>").unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators[0], vec![1, 2, -1, -2, -3, -3, -3]);
        assert_eq!(p.relators[1], vec![1, 3, -1, -3]);
    }

    #[test]
    fn parses_equations_groups_and_inverses() {
        let p = Presentation::parse("<x,y | x^2, y^3 = 1, (xy)^5, X y x = y>").unwrap();
        assert_eq!(p.relators[1], vec![2, 2, 2]);
        assert_eq!(p.relators[2].len(), 10);
        assert_eq!(p.relators[3], vec![-1, 2, 1, -2]);
    }

    #[test]
    fn round_trips_through_text() {
        let p = Presentation::parse("<s,t,b,c | s^2, t^2, [s,t], [b,c]s^-1>").unwrap();
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn empty_and_trivial_forms() {
        let p = Presentation::parse("<a | >").unwrap();
        assert!(p.relators.is_empty());
        let t = Presentation::parse("< | >").unwrap();
        assert_eq!(t.generator_count(), 0);
        assert!(Presentation::parse("<a | b>").is_err());
        assert!(Presentation::parse("<a,a | >").is_err());
        assert!(Presentation::parse("<a | a^>").is_err());
    }

    #[test]
    fn json_mirror() {
        let v = json!({"generators": ["a", "b"], "relators": [[1, 1], "b^3", "(ab)^2"]});
        let p = Presentation::from_json(&v).unwrap();
        assert_eq!(p.relators, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]]);
        assert!(Presentation::from_json(&json!({"generators": ["a"], "relators": [[2]]})).is_err());
    }

    #[test]
    fn tietze_elimination() {
        let p = Presentation::parse("<g1,g2,g3 | g1g2g3, g1^2, g2^2>").unwrap();
        let s = p.eliminate_generators();
        assert_eq!(s.generator_count(), 2);
        assert_eq!(s.relators, vec![vec![1, 1], vec![2, 2]]);
        let z = Presentation::parse("<g1,g2 | g1g2>").unwrap().eliminate_generators();
        assert_eq!((z.generator_count(), z.relators.len()), (1, 0));
        let d = Presentation::parse("<x,y,z | xyz, x^2, y^2, z^3>").unwrap().eliminate_generators();
        assert_eq!(d.generator_count(), 2);
        assert_eq!(crate::fp::abelianization(&d), crate::fp::abelianization(&Presentation::parse("<x,y,z | xyz, x^2, y^2, z^3>").unwrap()));
    }

    #[test]
    fn word_rendering() {
        let g = vec!["a".to_string(), "b".to_string()];
        assert_eq!(word_text(&g, &[1, 1, -2]), "a^2b^-1");
        assert_eq!(word_text(&g, &[]), "1");
    }
}
