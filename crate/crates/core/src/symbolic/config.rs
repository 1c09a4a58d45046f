//! TOML definitions of user substitution systems.
//!
//! ```toml
//! id = "doubling"
//! alphabet = ["a", "b", "c", "d"]
//! names = ["I"]
//! initial = [""]                 # token strings, one per name; "" is a single vertex
//! connectors = ["[a]", "[b,c]", "[b,d]", "[c,d]"]
//! repeat_from = 1
//! rules = [["I #0 I"], ["I #1 I"], ["I #2 I"], ["I #3 I"]]
//! ```
//!
//! `rules[n]` holds one formula per name and drives the step from generation
//! `n` to `n + 1`; after the list runs out, `rules[repeat_from..]` repeats.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::segment::Segment;
use super::system::{RuleBlock, SubstitutionSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub id: String,
    pub alphabet: Vec<String>,
    pub names: Vec<String>,
    pub initial: Vec<String>,
    #[serde(default)]
    pub connectors: Vec<String>,
    #[serde(default)]
    pub repeat_from: usize,
    pub rules: Vec<Vec<String>>,
}

impl SystemConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<SubstitutionSystem> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let parse = |t: &String| Segment::parse(&alphabet, t);
        let initial = self.initial.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let connectors = self.connectors.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let blocks = self
            .rules
            .iter()
            .map(|row| {
                let formulas = row
                    .iter()
                    .map(|f| SubstitutionSystem::parse_formula(&self.names, f))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RuleBlock { formulas })
            })
            .collect::<Result<Vec<_>>>()?;
        SubstitutionSystem::new(
            self.id.clone(),
            alphabet,
            self.names.clone(),
            initial,
            connectors,
            blocks,
            self.repeat_from,
        )
    }

    /// Configuration reproducing an existing system.
    pub fn of(system: &SubstitutionSystem) -> Self {
        let a = system.alphabet();
        SystemConfig {
            id: system.id().to_string(),
            alphabet: a.names().to_vec(),
            names: system.names().to_vec(),
            initial: system.initial().iter().map(|s| s.to_tokens(a)).collect(),
            connectors: system.connectors().iter().map(|s| s.to_tokens(a)).collect(),
            repeat_from: system.repeat_from(),
            rules: system
                .blocks()
                .iter()
                .map(|b| b.formulas.iter().map(|f| system.formula_text(f)).collect())
                .collect(),
        }
    }
}

pub fn load_system(path: impl AsRef<Path>) -> Result<SubstitutionSystem> {
    let text = std::fs::read_to_string(path)?;
    SystemConfig::from_toml(&text)?.build()
}
