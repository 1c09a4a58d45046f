//! Exponentially many distinct elements of controlled length in `G_α`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::WindowUniverse;
use crate::group::signature::{digest, offsets};
use crate::group::GroupWord;
use crate::symbolic::builtin::galpha;
use crate::symbolic::{AlphaEntry, AlphaSequence, XY};

#[derive(Clone, Debug, Serialize)]
pub struct SeparationRow {
    pub n: usize,
    pub elements: usize,
    pub length: usize,
    pub distinct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub system: String,
    pub prefix: String,
    pub n: usize,
    pub k: usize,
    /// `|I_k| + 1`.
    pub m: usize,
    /// The path word `g` across `I_k`.
    pub path: String,
    pub radius: usize,
    pub generation: Option<usize>,
    pub windows: usize,
    pub rows: Vec<SeparationRow>,
    pub collisions: Vec<(String, String)>,
    pub pass: bool,
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "separation on {} (k = {}, M = {}, g = {})", self.system, self.k, self.m, self.path)?;
        writeln!(f, "  universe radius {} with {} windows", self.radius, self.windows)?;
        for r in &self.rows {
            writeln!(
                f,
                "  n={} {} elements of length {}: {}",
                r.n,
                r.elements,
                r.length,
                if r.distinct { format!("distinct, γ({}) >= {}", r.length, r.elements) } else { "collision".into() }
            )?;
        }
        for (u, v) in &self.collisions {
            writeln!(f, "  collision {u} = {v}")?;
        }
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

fn all_words(n: usize) -> Vec<Vec<XY>> {
    (0..1usize << n)
        .map(|bits| (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 0 { XY::X } else { XY::Y }).collect())
        .collect()
}

/// Builds `α = prefix, w, σ, σ, …` where `w` lists every `{x,y}`-word of
/// length at most `n`, and checks that the words `g_v = t_n g ⋯ t_1 g`
/// (`v = t_1 ⋯ t_n`) are pairwise distinct elements.
pub fn separation_experiment(prefix: &[AlphaEntry], n: usize, exec: Exec) -> Result<SeparationReport> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let k = prefix.len();
    let base = galpha(&AlphaSequence::with_sigma_tail(prefix.to_vec())?)?;
    let i_k = base.segment(k, "I")?;
    let path: Vec<u8> = i_k.sets().iter().rev().map(|s| s.first()).collect();
    let m = i_k.len() + 1;

    let superword: Vec<XY> = (1..=n).flat_map(all_words).flatten().collect();
    let mut entries = prefix.to_vec();
    entries.push(AlphaEntry::Word(superword));
    let alpha = AlphaSequence::with_sigma_tail(entries)?;
    let system = galpha(&alpha)?;
    let a = system.alphabet();
    let (x, y) = (a.index("x").expect("x"), a.index("y").expect("y"));

    let radius = n * m;
    let universe = WindowUniverse::build(&system, radius)?;
    let mut rows = Vec::new();
    let mut collisions = Vec::new();
    let mut seen: HashMap<u128, GroupWord> = HashMap::new();
    for len in 1..=n {
        let mut distinct = true;
        let words = all_words(len);
        for v in &words {
            let mut letters = Vec::with_capacity(len * m);
            for t in v.iter().rev() {
                letters.push(if *t == XY::X { x } else { y });
                letters.extend_from_slice(&path);
            }
            let g = GroupWord::new(letters);
            let d = digest(&offsets(&g, &universe, exec)?);
            if let Some(prev) = seen.insert(d, g.clone()) {
                distinct = false;
                collisions.push((prev.to_text(a), g.to_text(a)));
            }
        }
        rows.push(SeparationRow { n: len, elements: words.len(), length: len * m, distinct });
    }
    Ok(SeparationReport {
        system: system.id().to_string(),
        prefix: prefix.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        n,
        k,
        m,
        path: GroupWord::new(path).to_text(a),
        radius,
        generation: universe.generation(),
        windows: universe.len(),
        pass: collisions.is_empty(),
        rows,
        collisions,
    })
}
