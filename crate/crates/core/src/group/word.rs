use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symbolic::{Alphabet, Symbol};

/// Product of generators, read as a left action: `s1 s2 … sk` applies `sk` first.
///
/// All generators are involutions, so the inverse of a word is its reversal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Symbol>,
}

impl GroupWord {
    pub fn new(letters: Vec<Symbol>) -> Self {
        GroupWord { letters }
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(s: Symbol) -> Self {
        GroupWord { letters: vec![s] }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" {
            return Ok(GroupWord::identity());
        }
        Ok(GroupWord { letters: alphabet.parse_symbols(t)? })
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        GroupWord { letters }
    }

    /// `self · other` (so `other` acts first).
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    /// `s · self`.
    pub fn prepend(&self, s: Symbol) -> GroupWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(s);
        letters.extend_from_slice(&self.letters);
        GroupWord { letters }
    }

    pub fn power(&self, k: usize) -> GroupWord {
        GroupWord { letters: self.letters.repeat(k) }
    }

    /// Cancels adjacent repeated letters (`ss = 1`).
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.letters.len());
        for &s in &self.letters {
            if out.last() == Some(&s) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        GroupWord { letters: out }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

/// `u v u⁻¹ v⁻¹`.
pub fn commutator(u: &GroupWord, v: &GroupWord) -> GroupWord {
    u.mul(v).mul(&u.inverse()).mul(&v.inverse())
}

/// `v u v⁻¹`.
pub fn conjugate(u: &GroupWord, v: &GroupWord) -> GroupWord {
    v.mul(u).mul(&v.inverse())
}

pub fn power(u: &GroupWord, k: usize) -> GroupWord {
    u.power(k)
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord{:?}", self.letters)
    }
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let sep = if self.alphabet.is_compact() { "" } else { " " };
        for (i, &s) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(self.alphabet.name(s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_algebra() {
        let h = Alphabet::new(["a0", "a1", "a2", "b", "c", "d"]).unwrap();
        let w = |t: &str| GroupWord::parse(&h, t).unwrap();
        assert_eq!(commutator(&w("a0"), &w("b")).to_text(&h), "a0 b a0 b");
        assert_eq!(conjugate(&w("a0"), &w("b")).to_text(&h), "b a0 b");
        let g = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let ad = GroupWord::parse(&g, "ad").unwrap();
        assert_eq!(power(&ad, 2).to_text(&g), "adad");
        assert_eq!(GroupWord::parse(&g, "1").unwrap(), GroupWord::identity());
        assert_eq!(GroupWord::parse(&g, "abba").unwrap().free_reduce(), GroupWord::identity());
    }
}
