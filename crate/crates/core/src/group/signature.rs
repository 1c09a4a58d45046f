use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::word::GroupWord;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::linear::{apply, step};
use crate::graph::WindowUniverse;
use crate::symbolic::Symbol;

/// Offsets of every window center under a word; equal signatures mean equal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ElementSignature {
    pub universe: String,
    pub radius: usize,
    pub offsets: Vec<i32>,
}

impl ElementSignature {
    pub fn is_identity(&self) -> bool {
        self.offsets.iter().all(|&o| o == 0)
    }

    pub fn digest(&self) -> u128 {
        digest(&self.offsets)
    }
}

/// 128-bit digest of an offset vector, from two independently tagged hashes.
pub fn digest(offsets: &[i32]) -> u128 {
    let mut lo = DefaultHasher::new();
    0x5eedu16.hash(&mut lo);
    offsets.hash(&mut lo);
    let mut hi = DefaultHasher::new();
    0xface_b00cu32.hash(&mut hi);
    offsets.hash(&mut hi);
    (hi.finish() as u128) << 64 | lo.finish() as u128
}

fn check_len(word: &GroupWord, universe: &WindowUniverse) -> Result<()> {
    if word.len() > universe.radius() {
        return Err(Error::WordTooLong { len: word.len(), radius: universe.radius() });
    }
    Ok(())
}

pub fn offsets(word: &GroupWord, universe: &WindowUniverse, exec: Exec) -> Result<Vec<i32>> {
    check_len(word, universe)?;
    let r = universe.radius();
    Ok(exec.map_range(universe.len(), |i| {
        let w = universe.window(i);
        let mut p = r;
        for &s in word.letters().iter().rev() {
            p = step(w, s, p);
        }
        p as i32 - r as i32
    }))
}

pub fn signature(word: &GroupWord, universe: &WindowUniverse) -> Result<ElementSignature> {
    signature_with(word, universe, Exec::default())
}

pub fn signature_with(word: &GroupWord, universe: &WindowUniverse, exec: Exec) -> Result<ElementSignature> {
    Ok(ElementSignature {
        universe: universe.id().to_string(),
        radius: universe.radius(),
        offsets: offsets(word, universe, exec)?,
    })
}

/// Whether two words define the same element.
pub fn equal(u: &GroupWord, v: &GroupWord, universe: &WindowUniverse) -> Result<bool> {
    check_len(u, universe)?;
    check_len(v, universe)?;
    let r = universe.radius();
    Ok(universe.windows().all(|w| {
        let pu = apply(w, u.letters(), r);
        let pv = apply(w, v.letters(), r);
        pu == pv
    }))
}

/// Offsets of `s · w` from the offsets of `w`.
///
/// Valid while `|w| < R`, so the center stays strictly inside every window.
pub fn extend(universe: &WindowUniverse, offsets: &[i32], s: Symbol) -> Vec<i32> {
    let r = universe.radius() as i32;
    offsets
        .iter()
        .enumerate()
        .map(|(i, &o)| step(universe.window(i), s, (r + o) as usize) as i32 - r)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::grigorchuk;

    #[test]
    fn grigorchuk_relations() {
        let g = grigorchuk();
        let u = WindowUniverse::build(&g, 3).unwrap();
        let w = |t: &str| GroupWord::parse(g.alphabet(), t).unwrap();
        assert!(signature(&GroupWord::identity(), &u).unwrap().is_identity());
        assert!(equal(&w("a"), &w("aaa"), &u).unwrap());
        assert!(equal(&w("bc"), &w("d"), &u).unwrap());
        assert!(equal(&w("cd"), &w("b"), &u).unwrap());
        assert!(!equal(&w("ab"), &w("ba"), &u).unwrap());
        assert!(matches!(equal(&w("abab"), &w("a"), &u), Err(Error::WordTooLong { .. })));
    }

    #[test]
    fn extension_matches_direct() {
        let g = grigorchuk();
        let u = WindowUniverse::build(&g, 4).unwrap();
        let w = GroupWord::parse(g.alphabet(), "abc").unwrap();
        let base = offsets(&w, &u, Exec::Sequential).unwrap();
        for s in 0..4u8 {
            let direct = offsets(&w.prepend(s), &u, Exec::Sequential).unwrap();
            assert_eq!(extend(&u, &base, s), direct);
        }
    }
}
