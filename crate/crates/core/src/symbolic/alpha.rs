use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letter of the two-letter monoid used by the α-parameterized family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XY {
    X,
    Y,
}

impl XY {
    pub fn as_char(self) -> char {
        match self {
            XY::X => 'x',
            XY::Y => 'y',
        }
    }
}

/// One entry of an α sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlphaEntry {
    Sigma,
    Word(Vec<XY>),
}

impl AlphaEntry {
    pub fn word(text: &str) -> Result<AlphaEntry> {
        if text.is_empty() {
            return Err(Error::InvalidAlpha("empty word entry".into()));
        }
        text.chars()
            .map(|c| match c {
                'x' => Ok(XY::X),
                'y' => Ok(XY::Y),
                other => Err(Error::InvalidAlpha(format!("letter `{other}` is not x or y"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(AlphaEntry::Word)
    }

    pub fn is_sigma(&self) -> bool {
        matches!(self, AlphaEntry::Sigma)
    }
}

impl fmt::Display for AlphaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaEntry::Sigma => f.write_str("s"),
            AlphaEntry::Word(w) => w.iter().try_for_each(|t| write!(f, "{}", t.as_char())),
        }
    }
}

impl FromStr for AlphaEntry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s" | "σ" | "sigma" => Ok(AlphaEntry::Sigma),
            w => AlphaEntry::word(w),
        }
    }
}

/// A finite prefix followed by a periodic tail (by default all σ).
///
/// Text form: comma-separated entries with an optional `|` before the repeating
/// tail, e.g. `s,xy` or `xy,s|x,s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaSequence {
    prefix: Vec<AlphaEntry>,
    tail: Vec<AlphaEntry>,
}

impl AlphaSequence {
    pub fn new(prefix: Vec<AlphaEntry>, tail: Vec<AlphaEntry>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::InvalidAlpha("tail must be nonempty".into()));
        }
        for e in prefix.iter().chain(tail.iter()) {
            if let AlphaEntry::Word(w) = e {
                if w.is_empty() {
                    return Err(Error::InvalidAlpha("empty word entry".into()));
                }
            }
        }
        Ok(AlphaSequence { prefix, tail })
    }

    /// `prefix` followed by σ forever.
    pub fn with_sigma_tail(prefix: Vec<AlphaEntry>) -> Result<Self> {
        AlphaSequence::new(prefix, vec![AlphaEntry::Sigma])
    }

    pub fn all_sigma() -> Self {
        AlphaSequence { prefix: Vec::new(), tail: vec![AlphaEntry::Sigma] }
    }

    pub fn prefix(&self) -> &[AlphaEntry] {
        &self.prefix
    }

    pub fn tail(&self) -> &[AlphaEntry] {
        &self.tail
    }

    pub fn entry(&self, n: usize) -> &AlphaEntry {
        if n < self.prefix.len() {
            &self.prefix[n]
        } else {
            &self.tail[(n - self.prefix.len()) % self.tail.len()]
        }
    }

    /// Same sequence with `entries` appended to the prefix.
    pub fn extended(&self, entries: impl IntoIterator<Item = AlphaEntry>) -> Result<Self> {
        let mut prefix = self.prefix.clone();
        prefix.extend(entries);
        AlphaSequence::new(prefix, self.tail.clone())
    }
}

impl fmt::Display for AlphaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[AlphaEntry]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        if self.tail == [AlphaEntry::Sigma] {
            if self.prefix.is_empty() {
                f.write_str("s")
            } else {
                f.write_str(&join(&self.prefix))
            }
        } else {
            write!(f, "{}|{}", join(&self.prefix), join(&self.tail))
        }
    }
}

impl FromStr for AlphaSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_list = |t: &str| -> Result<Vec<AlphaEntry>> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(str::parse).collect()
        };
        match s.split_once('|') {
            Some((p, t)) => AlphaSequence::new(parse_list(p)?, parse_list(t)?),
            None => AlphaSequence::with_sigma_tail(parse_list(s)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_index() {
        let a: AlphaSequence = "xy,s|x,s".parse().unwrap();
        assert_eq!(a.entry(0), &AlphaEntry::word("xy").unwrap());
        assert_eq!(a.entry(1), &AlphaEntry::Sigma);
        assert_eq!(a.entry(2), &AlphaEntry::word("x").unwrap());
        assert_eq!(a.entry(3), &AlphaEntry::Sigma);
        assert_eq!(a.entry(4), &AlphaEntry::word("x").unwrap());
        assert_eq!(a.to_string(), "xy,s|x,s");
        let sigma: AlphaSequence = "".parse().unwrap();
        assert_eq!(sigma, AlphaSequence::all_sigma());
        assert_eq!(sigma.to_string(), "s");
    }

    #[test]
    fn rejects_bad_entries() {
        assert!("xz".parse::<AlphaSequence>().is_err());
        assert!("x,,y".parse::<AlphaSequence>().is_err());
        assert!("x|".parse::<AlphaSequence>().is_err());
        assert!(AlphaSequence::new(vec![AlphaEntry::Word(vec![])], vec![AlphaEntry::Sigma]).is_err());
    }
}
