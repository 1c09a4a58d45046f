use crate::error::{Error, Result};
use crate::symbolic::{LabelSet, Segment, Symbol};

/// One move of `s` from vertex `p`, treating sets outside `sets` as empty.
///
/// Callers guarantee that `p` has enough context on both sides.
#[inline]
pub fn step(sets: &[LabelSet], s: Symbol, p: usize) -> usize {
    if p < sets.len() && sets[p].contains(s) {
        p + 1
    } else if p > 0 && sets[p - 1].contains(s) {
        p - 1
    } else {
        p
    }
}

/// Image of `p` under a word (letters applied right to left).
#[inline]
pub fn apply(sets: &[LabelSet], word: &[Symbol], mut p: usize) -> usize {
    for &s in word.iter().rev() {
        p = step(sets, s, p);
    }
    p
}

/// The linear graph of a finite admissible segment: vertex `i` sits between
/// sets `i - 1` and `i`, and generator `h` moves it across whichever
/// neighboring set contains `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearGraph {
    segment: Segment,
    origin: usize,
}

impl LinearGraph {
    pub fn new(segment: Segment) -> Self {
        LinearGraph { segment, origin: 0 }
    }

    /// Marks `origin` as the vertex representing position 0 of the ambient sequence.
    pub fn with_origin(segment: Segment, origin: usize) -> Self {
        LinearGraph { segment, origin }
    }

    pub fn segment(&self) -> &Segment {
        &self.segment
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn vertex_count(&self) -> usize {
        self.segment.vertex_count()
    }

    /// Signed coordinate of a vertex relative to the origin.
    pub fn coordinate(&self, vertex: usize) -> i64 {
        vertex as i64 - self.origin as i64
    }

    /// Image of vertex `position` under generator `symbol`.
    ///
    /// At an end vertex the move is decidable only when the symbol belongs to
    /// the one set that exists; otherwise the missing set would decide between
    /// a loop and an edge leaving the truncation.
    pub fn act(&self, symbol: Symbol, position: usize) -> Result<usize> {
        let sets = self.segment.sets();
        if position > sets.len() {
            return Err(Error::BoundaryUndecidable { position: self.coordinate(position) });
        }
        if position < sets.len() && sets[position].contains(symbol) {
            return Ok(position + 1);
        }
        if position > 0 && sets[position - 1].contains(symbol) {
            return Ok(position - 1);
        }
        if position == 0 || position == sets.len() {
            return Err(Error::BoundaryUndecidable { position: self.coordinate(position) });
        }
        Ok(position)
    }

    pub fn act_word(&self, word: &[Symbol], position: usize) -> Result<usize> {
        word.iter().rev().try_fold(position, |p, &s| self.act(s, p))
    }

    /// Generators looping at an interior vertex.
    pub fn loops(&self, position: usize) -> Option<Vec<Symbol>> {
        let sets = self.segment.sets();
        if position == 0 || position >= sets.len() {
            return None;
        }
        let near = sets[position - 1].bits() | sets[position].bits();
        Some((0..64u8).filter(|&s| near >> s & 1 == 0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::grigorchuk;

    #[test]
    fn grigorchuk_i2_moves() {
        let g = grigorchuk();
        let a = g.alphabet();
        let graph = LinearGraph::new(g.segment(2, "I").unwrap());
        let s = |n: &str| a.index(n).unwrap();
        assert_eq!(graph.act(s("a"), 0).unwrap(), 1);
        assert_eq!(graph.act(s("d"), 1).unwrap(), 1);
        assert_eq!(graph.act(s("c"), 2).unwrap(), 1);
        assert!(matches!(graph.act(s("b"), 0), Err(Error::BoundaryUndecidable { position: 0 })));
        assert_eq!(graph.act_word(&[s("a"), s("b")], 1).unwrap(), 3);
    }
}
