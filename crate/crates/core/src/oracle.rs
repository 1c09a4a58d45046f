//! Independent model of the Grigorchuk group acting on the binary tree.
//!
//! Nothing here uses the substitution engine except the cross-checks, which
//! compare the two.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::WindowUniverse;
use crate::group::signature::{digest, offsets};
use crate::group::GroupWord;
use crate::symbolic::builtin::grigorchuk;
use crate::symbolic::{LabelSet, Symbol};

/// Generators in the order of the built-in alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeGen {
    A,
    B,
    C,
    D,
}

impl TreeGen {
    pub fn from_symbol(s: Symbol) -> TreeGen {
        match s {
            0 => TreeGen::A,
            1 => TreeGen::B,
            2 => TreeGen::C,
            _ => TreeGen::D,
        }
    }
}

/// Action of one generator on a vertex of the tree, in place.
///
/// `a` flips the first letter; `b = (a, c)`, `c = (a, d)`, `d = (1, b)`.
/// The root (empty word) is fixed by everything.
pub fn tree_act_gen(g: TreeGen, v: &mut [u8]) {
    let mut g = Some(g);
    for x in v.iter_mut() {
        g = match (g, *x) {
            (None, _) => return,
            (Some(TreeGen::A), _) => {
                *x ^= 1;
                None
            }
            (Some(TreeGen::B), 0) | (Some(TreeGen::C), 0) => Some(TreeGen::A),
            (Some(TreeGen::D), 0) => None,
            (Some(TreeGen::B), _) => Some(TreeGen::C),
            (Some(TreeGen::C), _) => Some(TreeGen::D),
            (Some(TreeGen::D), _) => Some(TreeGen::B),
        };
    }
}

/// Image of `v` under a word (letters applied right to left).
pub fn tree_act(word: &[Symbol], v: &[u8]) -> Vec<u8> {
    let mut out = v.to_vec();
    for &s in word.iter().rev() {
        tree_act_gen(TreeGen::from_symbol(s), &mut out);
    }
    out
}

fn index_of(v: &[u8]) -> usize {
    v.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

fn vertex(i: usize, level: usize) -> Vec<u8> {
    (0..level).map(|k| (i >> (level - 1 - k) & 1) as u8).collect()
}

/// Permutation of level `level` induced by a word, as images of vertex indices
/// (first letter most significant).
pub fn tree_perm(word: &[Symbol], level: usize) -> Vec<u32> {
    (0..1usize << level)
        .map(|i| index_of(&tree_act(word, &vertex(i, level))) as u32)
        .collect()
}

/// Schreier graph of level `n` read as a path of label sets, starting at `1ⁿ`.
pub fn label_segment(n: usize) -> Result<Vec<LabelSet>> {
    let count = 1usize << n;
    let images: Vec<Vec<u32>> = (0..4).map(|s| tree_perm(&[s], n)).collect();
    let neighbours = |v: usize| -> Vec<(usize, LabelSet)> {
        let mut by_target: HashMap<usize, u64> = HashMap::new();
        for (s, img) in images.iter().enumerate() {
            let t = img[v] as usize;
            if t != v {
                *by_target.entry(t).or_default() |= 1 << s;
            }
        }
        let mut out: Vec<(usize, LabelSet)> = by_target
            .into_iter()
            .map(|(t, bits)| (t, LabelSet::from_bits(bits).expect("nonempty")))
            .collect();
        out.sort();
        out
    };
    let mut prev = usize::MAX;
    let mut v = count - 1;
    let mut sets = Vec::with_capacity(count.saturating_sub(1));
    for _ in 1..count {
        let next: Vec<(usize, LabelSet)> = neighbours(v).into_iter().filter(|&(t, _)| t != prev).collect();
        match next.as_slice() {
            [(t, set)] => {
                sets.push(*set);
                prev = v;
                v = *t;
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "level {n} Schreier graph is not a path at vertex {v}"
                )))
            }
        }
    }
    Ok(sets)
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub system: String,
    pub levels: usize,
    /// Levels whose tree path equals the generated `I_n` up to reversal.
    pub segment_matches: Vec<bool>,
    /// Tree vertices whose loops disagree with the linear graph's.
    pub loop_mismatches: usize,
    pub words: usize,
    pub tree_level: usize,
    pub universe_radius: usize,
    /// Unordered word pairs equal as signatures / equal on the tree / both.
    pub pairs_signature: u64,
    pub pairs_tree: u64,
    pub pairs_both: u64,
    pub disagreements: u64,
    pub pass: bool,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tree oracle against {}", self.system)?;
        let ok = self.segment_matches.iter().filter(|&&m| m).count();
        writeln!(f, "  Schreier paths equal to I_n on {ok} of {} levels", self.levels)?;
        writeln!(f, "  loop mismatches: {}", self.loop_mismatches)?;
        writeln!(
            f,
            "  {} words, tree level {}, universe radius {}: {} / {} / {} equal pairs, {} disagreements",
            self.words,
            self.tree_level,
            self.universe_radius,
            self.pairs_signature,
            self.pairs_tree,
            self.pairs_both,
            self.disagreements
        )?;
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

fn all_words(letters: u8, max_len: usize) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..letters).map(move |s| w.prepend(s)))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn equal_pairs<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> u64 {
    let mut counts: HashMap<K, u64> = HashMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    counts.values().map(|&c| c * (c - 1) / 2).sum()
}

/// Compares the engine with the tree model.
///
/// Paths: the level-`n` Schreier graph against `I_n` for `n ≤ levels`.
/// Loops: at every vertex of those paths the generators fixing it on the tree
/// are the ones missing from the adjacent label sets. Words: all words of
/// length `≤ max_len`, equal by signature iff equal on level `tree_level`.
pub fn cross_check(levels: usize, max_len: usize, tree_level: usize, exec: Exec) -> Result<OracleReport> {
    let system = grigorchuk();
    let mut matches = Vec::new();
    let mut loop_mismatches = 0;
    for n in 1..=levels {
        let tree = label_segment(n)?;
        let engine = system.segment(n, "I")?;
        let fwd = tree.as_slice() == engine.sets();
        let rev = tree.iter().rev().eq(engine.sets().iter());
        matches.push(fwd || rev);

        let images: Vec<Vec<u32>> = (0..4).map(|s| tree_perm(&[s], n)).collect();
        let order = path_order(&tree, &images, n);
        for (pos, &v) in order.iter().enumerate() {
            let mut adjacent = 0u64;
            if pos > 0 {
                adjacent |= tree[pos - 1].bits();
            }
            if pos < tree.len() {
                adjacent |= tree[pos].bits();
            }
            let fixed: u64 = (0..4).filter(|&s| images[s][v] as usize == v).fold(0, |a, s| a | 1 << s);
            if fixed != !adjacent & 0b1111 {
                loop_mismatches += 1;
            }
        }
    }

    let words = all_words(4, max_len);
    let universe = WindowUniverse::build(&system, max_len)?;
    let sig: Vec<u128> = words
        .iter()
        .map(|w| offsets(w, &universe, Exec::Sequential).map(|o| digest(&o)))
        .collect::<Result<_>>()?;
    let perms: Vec<Vec<u32>> = exec.map(&words, |w| tree_perm(w.letters(), tree_level));
    let p_sig = equal_pairs(sig.iter().copied());
    let p_tree = equal_pairs(perms.iter().cloned());
    let p_both = equal_pairs(sig.iter().copied().zip(perms.iter().cloned()));
    let disagreements = p_sig + p_tree - 2 * p_both;
    Ok(OracleReport {
        system: system.id().to_string(),
        levels,
        pass: matches.iter().all(|&m| m) && loop_mismatches == 0 && disagreements == 0,
        segment_matches: matches,
        loop_mismatches,
        words: words.len(),
        tree_level,
        universe_radius: universe.radius(),
        pairs_signature: p_sig,
        pairs_tree: p_tree,
        pairs_both: p_both,
        disagreements,
    })
}

/// Tree vertices in path order, starting at `1ⁿ` as in [`label_segment`].
fn path_order(sets: &[LabelSet], images: &[Vec<u32>], n: usize) -> Vec<usize> {
    let mut v = (1usize << n) - 1;
    let mut out = vec![v];
    for set in sets {
        v = images[set.first() as usize][v] as usize;
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_recursion() {
        assert_eq!(tree_act(&[0], &[0, 1, 1]), vec![1, 1, 1]);
        // b(1 0 x) = 1 c(0 x) = 1 0 a(x)
        assert_eq!(tree_act(&[1], &[1, 0, 0]), vec![1, 0, 1]);
        // d(0 w) = 0 w
        assert_eq!(tree_act(&[3], &[0, 0, 0]), vec![0, 0, 0]);
        assert_eq!(tree_act(&[2], &[]), Vec::<u8>::new());
    }

    #[test]
    fn small_levels() {
        let g = grigorchuk();
        let a = g.alphabet();
        let tokens = |s: &[LabelSet]| s.iter().map(|x| x.token(a)).collect::<String>();
        assert_eq!(tokens(&label_segment(1).unwrap()), "[a]");
        assert_eq!(tokens(&label_segment(2).unwrap()), "[a][b,c][a]");
    }

    #[test]
    fn cross_check_small() {
        let r = cross_check(6, 3, 6, Exec::Sequential).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.words, 85);
    }
}
