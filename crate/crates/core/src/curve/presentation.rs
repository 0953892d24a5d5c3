use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CurveDivisor, OrbifoldIndex};
use crate::error::Result;
use crate::fp::word::{commutator, power, Word};
use crate::fp::Presentation;

/// Orbifold fundamental group presentation with the loop around each point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldPresentation {
    #[serde(flatten)]
    pub presentation: Presentation,
    pub point_loops: BTreeMap<String, String>,
}

impl OrbifoldPresentation {
    /// Generator index (1-based) of the loop around `label`.
    pub fn loop_of(&self, label: &str) -> Option<i32> {
        let name = self.point_loops.get(label)?;
        self.presentation
            .generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as i32 + 1)
    }
}

/// Genus 0: `⟨g1..gr | g1⋯gr, gi^mi⟩`; genus 1: `⟨a,b,g1..gr | [a,b]g1⋯gr, gi^mi⟩`.
/// Only finite orbifold indices contribute power relators; zero-coefficient
/// points are dropped first.
pub fn orbifold_presentation(d: &CurveDivisor) -> Result<OrbifoldPresentation> {
    d.require_standard()?;
    let d = d.canonical();
    let indices = d.indices()?;
    let mut generators: Vec<String> = Vec::new();
    let mut product: Word = Vec::new();
    if d.genus == 1 {
        generators.extend(["a".to_string(), "b".to_string()]);
        product = commutator(&[1], &[2]);
    }
    let offset = generators.len() as i32;
    let mut point_loops = BTreeMap::new();
    let mut powers = Vec::new();
    for (i, (p, m)) in d.points.iter().zip(&indices).enumerate() {
        let name = format!("g{}", i + 1);
        let g = offset + i as i32 + 1;
        generators.push(name.clone());
        point_loops.insert(p.label.clone(), name);
        product.push(g);
        if let OrbifoldIndex::Finite(m) = m {
            powers.push(power(&[g], *m as i64));
        }
    }
    let mut relators = vec![product];
    relators.extend(powers);
    Ok(OrbifoldPresentation { presentation: Presentation::new(generators, relators)?, point_loops })
}
