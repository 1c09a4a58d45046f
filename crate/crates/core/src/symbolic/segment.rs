use std::fmt;

use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Nonempty set of generators labeling the edges between two consecutive vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(transparent)]
pub struct LabelSet(u64);

impl LabelSet {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            return Err(Error::Parse("label sets must be nonempty".into()));
        }
        Ok(LabelSet(bits))
    }

    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(symbols: I) -> Result<Self> {
        let bits = symbols.into_iter().fold(0u64, |acc, s| acc | (1u64 << s));
        LabelSet::from_bits(bits)
    }

    pub fn singleton(s: Symbol) -> Self {
        LabelSet(1u64 << s)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, s: Symbol) -> bool {
        self.0 >> s & 1 == 1
    }

    #[inline]
    pub fn intersects(self, other: LabelSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in alphabet order.
    pub fn members(self) -> impl Iterator<Item = Symbol> {
        let bits = self.0;
        (0..64u8).filter(move |&s| bits >> s & 1 == 1)
    }

    /// Smallest member in alphabet order.
    pub fn first(self) -> Symbol {
        self.0.trailing_zeros() as Symbol
    }

    pub fn write_token(self, alphabet: &Alphabet, out: &mut String) {
        out.push('[');
        for (i, s) in self.members().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(alphabet.name(s));
        }
        out.push(']');
    }

    pub fn token(self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.write_token(alphabet, &mut s);
        s
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelSet({:#b})", self.0)
    }
}

/// Finite admissible sequence of label sets: a linear graph with `len() + 1` vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Segment {
    sets: Vec<LabelSet>,
}

/// First position `i` with `sets[i] ∩ sets[i+1] ≠ ∅`.
pub fn first_violation(sets: &[LabelSet]) -> Option<usize> {
    sets.windows(2).position(|w| w[0].intersects(w[1]))
}

impl Segment {
    pub fn new(sets: Vec<LabelSet>) -> Result<Self> {
        if let Some(position) = first_violation(&sets) {
            return Err(Error::AdmissibilityViolation { position });
        }
        Ok(Segment { sets })
    }

    /// The single-vertex segment.
    pub fn point() -> Self {
        Segment { sets: Vec::new() }
    }

    pub(crate) fn from_sets_unchecked(sets: Vec<LabelSet>) -> Self {
        debug_assert!(first_violation(&sets).is_none());
        Segment { sets }
    }

    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    /// Number of label sets (edges between consecutive vertices).
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.sets.len() + 1
    }

    pub fn reversed(&self) -> Segment {
        let mut sets = self.sets.clone();
        sets.reverse();
        Segment { sets }
    }

    pub fn is_palindrome(&self) -> bool {
        self.sets.iter().eq(self.sets.iter().rev())
    }

    /// `left ++ connector ++ right`, checking both junctions.
    pub fn concat(left: &Segment, connector: &Segment, right: &Segment) -> Result<Segment> {
        Segment::concat_all([left, connector, right])
    }

    /// Concatenation of any number of segments; junction violations report the
    /// absolute position in the result.
    pub fn concat_all<'a, I>(parts: I) -> Result<Segment>
    where
        I: IntoIterator<Item = &'a Segment>,
    {
        let mut sets: Vec<LabelSet> = Vec::new();
        for part in parts {
            if let (Some(&last), Some(&first)) = (sets.last(), part.sets.first()) {
                if last.intersects(first) {
                    return Err(Error::AdmissibilityViolation { position: sets.len() - 1 });
                }
            }
            sets.extend_from_slice(&part.sets);
        }
        Ok(Segment { sets })
    }

    /// Start positions (in label-set coordinates) of `pattern` inside `self`.
    pub fn occurrences(&self, pattern: &[LabelSet]) -> Vec<usize> {
        occurrences(&self.sets, pattern)
    }

    pub fn contains(&self, pattern: &Segment) -> bool {
        contains(&self.sets, &pattern.sets)
    }

    /// Contains `pattern` or its reversal.
    pub fn contains_unoriented(&self, pattern: &Segment) -> bool {
        self.contains(pattern) || self.contains(&pattern.reversed())
    }

    pub fn to_tokens(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for set in &self.sets {
            set.write_token(alphabet, &mut out);
        }
        out
    }

    /// Parses `[a2][b,c][a0]`; the empty string is the single-vertex segment.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Segment> {
        Segment::new(parse_sets(alphabet, text)?)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> SegmentDisplay<'a> {
        SegmentDisplay { segment: self, alphabet }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.sets.iter().map(|s| s.0)).finish()
    }
}

pub struct SegmentDisplay<'a> {
    segment: &'a Segment,
    alphabet: &'a Alphabet,
}

impl fmt::Display for SegmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.segment.to_tokens(self.alphabet))
    }
}

/// Parses a bracketed token list without checking admissibility.
pub fn parse_sets(alphabet: &Alphabet, text: &str) -> Result<Vec<LabelSet>> {
    let mut sets = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| Error::Parse(format!("expected `[` at `{rest}`")))?;
        let close = body
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated token in `{text}`")))?;
        let mut bits = 0u64;
        for name in body[..close].split(',').map(str::trim) {
            let s = alphabet
                .index(name)
                .ok_or_else(|| Error::Parse(format!("unknown symbol `{name}`")))?;
            bits |= 1u64 << s;
        }
        sets.push(LabelSet::from_bits(bits)?);
        rest = body[close + 1..].trim_start();
    }
    Ok(sets)
}

pub(crate) fn occurrences(hay: &[LabelSet], pattern: &[LabelSet]) -> Vec<usize> {
    if pattern.is_empty() {
        return (0..=hay.len()).collect();
    }
    if pattern.len() > hay.len() {
        return Vec::new();
    }
    hay.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn contains(hay: &[LabelSet], pattern: &[LabelSet]) -> bool {
    pattern.is_empty()
        || (pattern.len() <= hay.len() && hay.windows(pattern.len()).any(|w| w == pattern))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghat() -> Alphabet {
        Alphabet::new(["a0", "a1", "a2", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn token_format_sorts_members() {
        let a = ghat();
        let s = Segment::parse(&a, "[a2][d,b][a0]").unwrap();
        assert_eq!(s.to_tokens(&a), "[a2][b,d][a0]");
        assert_eq!(Segment::parse(&a, "").unwrap(), Segment::point());
    }

    #[test]
    fn parse_rejects_bad_input() {
        let a = ghat();
        assert!(matches!(Segment::parse(&a, "[a0][a0]"), Err(Error::AdmissibilityViolation { position: 0 })));
        assert!(Segment::parse(&a, "[a0").is_err());
        assert!(Segment::parse(&a, "[]").is_err());
        assert!(Segment::parse(&a, "[q]").is_err());
        assert!(Segment::parse(&a, "a0").is_err());
    }

    #[test]
    fn concat_examples() {
        let g = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let a = Segment::parse(&g, "[a]").unwrap();
        let bc = Segment::parse(&g, "[b,c]").unwrap();
        assert_eq!(Segment::concat(&a, &bc, &a).unwrap().to_tokens(&g), "[a][b,c][a]");
        assert_eq!(
            Segment::concat(&a, &bc, &bc),
            Err(Error::AdmissibilityViolation { position: 1 })
        );

        let h = ghat();
        let j1 = Segment::parse(&h, "[a2][b,c][a1]").unwrap();
        let e = Segment::parse(&h, "[b,c]").unwrap();
        let joined = Segment::concat(&j1, &e, &j1.reversed()).unwrap();
        assert_eq!(joined.to_tokens(&h), "[a2][b,c][a1][b,c][a1][b,c][a2]");
    }

    #[test]
    fn reverse_examples() {
        let h = ghat();
        let i1 = Segment::parse(&h, "[a2][b,c][a0]").unwrap();
        assert_eq!(i1.reversed().to_tokens(&h), "[a0][b,c][a2]");
        assert_eq!(Segment::point().reversed(), Segment::point());
        assert_eq!(i1.reversed().reversed(), i1);
    }

    #[test]
    fn containment() {
        let h = ghat();
        let j2 = Segment::parse(&h, "[a2][b,c][a1][b,d][a0][b,c][a2]").unwrap();
        let i1 = Segment::parse(&h, "[a2][b,c][a0]").unwrap();
        assert!(!j2.contains(&i1));
        assert!(j2.contains_unoriented(&i1));
        assert_eq!(j2.occurrences(Segment::parse(&h, "[b,c]").unwrap().sets()), vec![1, 5]);
    }
}
