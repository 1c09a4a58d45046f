use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a generator inside its [`Alphabet`].
pub type Symbol = u8;

/// Most generators a label set can hold (one bit each).
pub const MAX_SYMBOLS: usize = 64;

/// Ordered list of distinct generator names.
///
/// The order is fixed at creation and defines the canonical member order
/// of every serialized label set.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    names: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Alphabet("alphabet must be nonempty".into()));
        }
        if names.len() > MAX_SYMBOLS {
            return Err(Error::Alphabet(format!(
                "at most {MAX_SYMBOLS} symbols supported, got {}",
                names.len()
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let valid = !name.is_empty()
                && name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Alphabet(format!("invalid symbol name `{name}`")));
            }
            if index.insert(name.clone(), i as Symbol).is_some() {
                return Err(Error::Alphabet(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Alphabet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| i as Symbol)
    }

    /// Whether every name is one character, so words can be written without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Splits text into symbols.
    ///
    /// Whitespace, commas and dots separate tokens; inside a token the longest
    /// matching name is taken greedily, so `a0a1` and `a0 a1` both parse.
    pub fn parse_symbols(&self, text: &str) -> Result<Vec<Symbol>> {
        let longest = self.names.iter().map(|n| n.len()).max().unwrap_or(1);
        let mut out = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',' || c == '.') {
            let mut rest = token;
            while !rest.is_empty() {
                let mut matched = None;
                for len in (1..=longest.min(rest.len())).rev() {
                    if !rest.is_char_boundary(len) {
                        continue;
                    }
                    if let Some(s) = self.index(&rest[..len]) {
                        matched = Some((s, len));
                        break;
                    }
                }
                match matched {
                    Some((s, len)) => {
                        out.push(s);
                        rest = &rest[len..];
                    }
                    None => {
                        return Err(Error::Parse(format!(
                            "no symbol of the alphabet matches at `{rest}`"
                        )))
                    }
                }
            }
        }
        Ok(out)
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(names: Vec<String>) -> Result<Self> {
        Alphabet::new(names)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.names
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "b", "a"]).is_err());
        assert!(Alphabet::new(["a", ""]).is_err());
    }

    #[test]
    fn greedy_parse() {
        let a = Alphabet::new(["a0", "a1", "a2", "b", "c", "d"]).unwrap();
        assert_eq!(a.parse_symbols("a0a1b").unwrap(), vec![0, 1, 3]);
        assert_eq!(a.parse_symbols("a2 b, c").unwrap(), vec![2, 3, 4]);
        assert!(a.parse_symbols("a3").is_err());
        assert!(a.parse_symbols("").unwrap().is_empty());
    }
}
