use serde::Serialize;

use super::perm::Perm;
use super::word::GroupWord;
use crate::error::{Error, Result};
use crate::graph::linear::apply;
use crate::symbolic::{LabelSet, Segment};

/// Outcome of restricting a word to a span of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Restriction {
    /// Induced permutation, in span-local coordinates (vertex `start` is 0).
    Invariant { perm: Perm },
    NotInvariant { vertex: usize, image: usize },
}

impl Restriction {
    pub fn perm(&self) -> Option<&Perm> {
        match self {
            Restriction::Invariant { perm } => Some(perm),
            Restriction::NotInvariant { .. } => None,
        }
    }
}

/// Action of `word` on the vertices `start..=end` of `ambient`.
///
/// The span must keep more than `|word|` vertices of context on each side.
pub fn restrict(word: &GroupWord, ambient: &[LabelSet], start: usize, end: usize) -> Result<Restriction> {
    let len = ambient.len();
    let needed = word.len();
    if start > end || start <= needed || end + needed >= len {
        return Err(Error::BoundaryTooClose { start, end, len, needed: needed + 1 });
    }
    let mut images = Vec::with_capacity(end - start + 1);
    for v in start..=end {
        let image = apply(ambient, word.letters(), v);
        if image < start || image > end {
            return Ok(Restriction::NotInvariant { vertex: v, image });
        }
        images.push(image - start);
    }
    Ok(Restriction::Invariant { perm: Perm::from_images(images)? })
}

/// Position of a copy of a segment inside an ambient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CopySpan {
    /// First vertex of the copy.
    pub start: usize,
    /// Last vertex of the copy.
    pub end: usize,
    /// Whether the copy reads as the reversed pattern.
    pub reversed: bool,
}

impl CopySpan {
    /// Maps a permutation in span-local coordinates to the pattern's own
    /// coordinates (reversed copies read `i ↦ len - i`).
    pub fn canonical(&self, local: &Perm) -> Perm {
        if !self.reversed {
            return local.clone();
        }
        let last = self.end - self.start;
        let images = (0..=last).map(|i| last - local.apply(last - i)).collect();
        Perm::from_images(images).expect("conjugate of a permutation")
    }
}

/// All copies of `pattern` and its reversal in `ambient`.
///
/// A palindromic pattern reports each copy once (as forward). Two copies that
/// share an edge mean the factorization into copies is not unique, which is
/// reported as an error.
pub fn find_copies(ambient: &[LabelSet], pattern: &Segment) -> Result<Vec<CopySpan>> {
    let n = pattern.len();
    if n == 0 {
        return Err(Error::Precondition("cannot locate copies of a single vertex".into()));
    }
    let mut spans: Vec<CopySpan> = crate::symbolic::segment::occurrences(ambient, pattern.sets())
        .into_iter()
        .map(|s| CopySpan { start: s, end: s + n, reversed: false })
        .collect();
    if !pattern.is_palindrome() {
        let rev = pattern.reversed();
        spans.extend(
            crate::symbolic::segment::occurrences(ambient, rev.sets())
                .into_iter()
                .map(|s| CopySpan { start: s, end: s + n, reversed: true }),
        );
    }
    spans.sort();
    if let Some(w) = spans.windows(2).find(|w| w[1].start < w[0].end) {
        return Err(Error::Precondition(format!(
            "copies at vertices {}..={} and {}..={} overlap",
            w[0].start, w[0].end, w[1].start, w[1].end
        )));
    }
    Ok(spans)
}
