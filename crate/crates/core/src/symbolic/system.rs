use std::fmt;
use std::sync::{Arc, Mutex};

use super::alphabet::Alphabet;
use super::segment::{LabelSet, Segment};
use crate::error::{Error, Result};

/// Longest segment a generation may produce before generation is refused.
pub const MAX_SEGMENT_LEN: usize = 1 << 26;

/// One term of a rule formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// A previous-generation segment, by name index.
    Part { name: usize, reversed: bool },
    /// A fixed connector segment, by index.
    Connector { index: usize, reversed: bool },
}

impl Item {
    pub fn part(name: usize) -> Item {
        Item::Part { name, reversed: false }
    }

    pub fn part_rev(name: usize) -> Item {
        Item::Part { name, reversed: true }
    }

    pub fn conn(index: usize) -> Item {
        Item::Connector { index, reversed: false }
    }

    pub fn flipped(self) -> Item {
        match self {
            Item::Part { name, reversed } => Item::Part { name, reversed: !reversed },
            Item::Connector { index, reversed } => Item::Connector { index, reversed: !reversed },
        }
    }

    pub fn is_part(self) -> bool {
        matches!(self, Item::Part { .. })
    }
}

/// Rules for one generation step: one formula per segment name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleBlock {
    pub formulas: Vec<Vec<Item>>,
}

/// A (possibly non-stationary) substitution producing named segments generation by generation.
///
/// Step `n` (generation `n` to `n + 1`) uses `blocks[n]` while `n < blocks.len()`;
/// afterwards the blocks from `repeat_from` on repeat periodically.
pub struct SubstitutionSystem {
    id: String,
    alphabet: Arc<Alphabet>,
    names: Vec<String>,
    initial: Vec<Segment>,
    connectors: Vec<Segment>,
    blocks: Vec<RuleBlock>,
    repeat_from: usize,
    cache: Mutex<Vec<Arc<Vec<Segment>>>>,
}

impl Clone for SubstitutionSystem {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("generation cache poisoned").clone();
        SubstitutionSystem {
            id: self.id.clone(),
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            initial: self.initial.clone(),
            connectors: self.connectors.clone(),
            blocks: self.blocks.clone(),
            repeat_from: self.repeat_from,
            cache: Mutex::new(cache),
        }
    }
}

impl fmt::Debug for SubstitutionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubstitutionSystem")
            .field("id", &self.id)
            .field("alphabet", &self.alphabet)
            .field("names", &self.names)
            .field("blocks", &self.blocks.len())
            .field("repeat_from", &self.repeat_from)
            .finish()
    }
}

impl SubstitutionSystem {
    pub fn new(
        id: impl Into<String>,
        alphabet: Alphabet,
        names: Vec<String>,
        initial: Vec<Segment>,
        connectors: Vec<Segment>,
        blocks: Vec<RuleBlock>,
        repeat_from: usize,
    ) -> Result<Self> {
        let config = |m: String| Error::Config(m);
        if names.is_empty() {
            return Err(config("at least one segment name is required".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(config(format!("duplicate segment name `{n}`")));
            }
        }
        if initial.len() != names.len() {
            return Err(config(format!(
                "{} initial segments for {} names",
                initial.len(),
                names.len()
            )));
        }
        if blocks.is_empty() {
            return Err(config("at least one rule block is required".into()));
        }
        if repeat_from >= blocks.len() {
            return Err(config(format!(
                "repeat_from {repeat_from} out of range for {} blocks",
                blocks.len()
            )));
        }
        let width = alphabet.len();
        let in_alphabet = |s: &LabelSet| width == 64 || s.bits() >> width == 0;
        for seg in initial.iter().chain(connectors.iter()) {
            if !seg.sets().iter().all(in_alphabet) {
                return Err(config("segment uses symbols outside the alphabet".into()));
            }
        }
        for (step, block) in blocks.iter().enumerate() {
            if block.formulas.len() != names.len() {
                return Err(Error::RuleReference {
                    generation: step + 1,
                    message: format!(
                        "{} formulas for {} names",
                        block.formulas.len(),
                        names.len()
                    ),
                });
            }
            for formula in &block.formulas {
                if formula.is_empty() {
                    return Err(Error::RuleReference {
                        generation: step + 1,
                        message: "empty formula".into(),
                    });
                }
                for item in formula {
                    match *item {
                        Item::Part { name, .. } if name >= names.len() => {
                            return Err(Error::RuleReference {
                                generation: step + 1,
                                message: format!("unknown segment index {name}"),
                            })
                        }
                        Item::Connector { index, .. } if index >= connectors.len() => {
                            return Err(Error::RuleReference {
                                generation: step + 1,
                                message: format!("unknown connector #{index}"),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(SubstitutionSystem {
            id: id.into(),
            alphabet: Arc::new(alphabet),
            cache: Mutex::new(vec![Arc::new(initial.clone())]),
            names,
            initial,
            connectors,
            blocks,
            repeat_from,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> &[Segment] {
        &self.initial
    }

    pub fn connectors(&self) -> &[Segment] {
        &self.connectors
    }

    pub fn blocks(&self) -> &[RuleBlock] {
        &self.blocks
    }

    pub fn repeat_from(&self) -> usize {
        self.repeat_from
    }

    /// Rule block used to go from generation `step` to `step + 1`.
    pub fn block_for_step(&self, step: usize) -> &RuleBlock {
        if step < self.blocks.len() {
            &self.blocks[step]
        } else {
            let period = self.blocks.len() - self.repeat_from;
            &self.blocks[self.repeat_from + (step - self.repeat_from) % period]
        }
    }

    /// Generation `n`, one segment per name, computed once and cached.
    pub fn generation(&self, n: usize) -> Result<Arc<Vec<Segment>>> {
        let mut cache = self.cache.lock().expect("generation cache poisoned");
        while cache.len() <= n {
            let step = cache.len() - 1;
            let next = self.apply_step(step, cache.last().expect("generation 0 is cached"))?;
            cache.push(Arc::new(next));
        }
        Ok(cache[n].clone())
    }

    /// Generations `0..=n`.
    pub fn generate(&self, n: usize) -> Result<Vec<Arc<Vec<Segment>>>> {
        (0..=n).map(|g| self.generation(g)).collect()
    }

    pub fn segment(&self, generation: usize, name: &str) -> Result<Segment> {
        let idx = self
            .name_index(name)
            .ok_or_else(|| Error::Config(format!("no segment named `{name}`")))?;
        Ok(self.generation(generation)?[idx].clone())
    }

    /// Longest segment of generation `n` (first by name order on ties).
    pub fn longest(&self, n: usize) -> Result<Segment> {
        let g = self.generation(n)?;
        let best = g
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
            .map(|(_, s)| s.clone())
            .expect("systems have at least one name");
        Ok(best)
    }

    fn apply_step(&self, step: usize, prev: &[Segment]) -> Result<Vec<Segment>> {
        let block = self.block_for_step(step);
        let mut out = Vec::with_capacity(self.names.len());
        for formula in &block.formulas {
            let seg = self.materialize(formula, prev)?;
            if seg.len() > MAX_SEGMENT_LEN {
                return Err(Error::SegmentTooLong {
                    generation: step + 1,
                    limit: MAX_SEGMENT_LEN,
                });
            }
            out.push(seg);
        }
        Ok(out)
    }

    /// Concatenates the items of a formula over the given previous generation.
    pub fn materialize(&self, formula: &[Item], prev: &[Segment]) -> Result<Segment> {
        let owned: Vec<Segment> = formula
            .iter()
            .map(|item| self.item_segment(*item, prev))
            .collect();
        Segment::concat_all(owned.iter())
    }

    pub fn item_segment(&self, item: Item, prev: &[Segment]) -> Segment {
        let (seg, rev) = match item {
            Item::Part { name, reversed } => (&prev[name], reversed),
            Item::Connector { index, reversed } => (&self.connectors[index], reversed),
        };
        if rev {
            seg.reversed()
        } else {
            seg.clone()
        }
    }

    /// Length in label sets of an item at the given level.
    pub fn item_len(&self, item: Item, level: usize) -> Result<usize> {
        Ok(match item {
            Item::Part { name, .. } => self.generation(level)?[name].len(),
            Item::Connector { index, .. } => self.connectors[index].len(),
        })
    }

    /// Expands each generation-`m` segment into level-`n` items (`n <= m`).
    pub fn decompose(&self, m: usize, n: usize) -> Result<Vec<Vec<Item>>> {
        if n > m {
            return Err(Error::Precondition(format!("cannot decompose generation {m} into level {n}")));
        }
        let mut current: Vec<Vec<Item>> = (0..self.names.len()).map(|i| vec![Item::part(i)]).collect();
        for level in (n..m).rev() {
            let block = self.block_for_step(level);
            current = current
                .into_iter()
                .map(|items| {
                    let mut out = Vec::new();
                    for item in items {
                        match item {
                            Item::Part { name, reversed: false } => {
                                out.extend_from_slice(&block.formulas[name])
                            }
                            Item::Part { name, reversed: true } => out.extend(
                                block.formulas[name].iter().rev().map(|i| i.flipped()),
                            ),
                            c @ Item::Connector { .. } => out.push(c),
                        }
                    }
                    out
                })
                .collect();
        }
        Ok(current)
    }

    pub fn formula_text(&self, formula: &[Item]) -> String {
        formula
            .iter()
            .map(|item| match *item {
                Item::Part { name, reversed } => {
                    format!("{}{}", self.names[name], if reversed { "~" } else { "" })
                }
                Item::Connector { index, reversed } => {
                    format!("#{}{}", index, if reversed { "~" } else { "" })
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `J #1 I~` against this system's names (reversal: `~` or `^-1`).
    pub fn parse_formula(names: &[String], text: &str) -> Result<Vec<Item>> {
        text.split_whitespace()
            .map(|tok| {
                let (body, reversed) = if let Some(b) = tok.strip_suffix('~') {
                    (b, true)
                } else if let Some(b) = tok.strip_suffix("^-1") {
                    (b, true)
                } else {
                    (tok, false)
                };
                if let Some(idx) = body.strip_prefix('#') {
                    let index = idx
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad connector token `{tok}`")))?;
                    Ok(Item::Connector { index, reversed })
                } else {
                    let name = names
                        .iter()
                        .position(|n| n == body)
                        .ok_or_else(|| Error::Parse(format!("unknown segment name `{body}`")))?;
                    Ok(Item::Part { name, reversed })
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SubstitutionSystem {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let names = vec!["P".to_string()];
        let init = vec![Segment::parse(&a, "[a][b]").unwrap()];
        let block = RuleBlock { formulas: vec![vec![Item::part(0), Item::part(0)]] };
        SubstitutionSystem::new("tiny", a, names, init, vec![], vec![block], 0).unwrap()
    }

    #[test]
    fn doubling_rule() {
        let s = tiny();
        assert_eq!(s.generation(3).unwrap()[0].len(), 16);
        assert_eq!(s.generate(2).unwrap().len(), 3);
    }

    #[test]
    fn rejects_dangling_references() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let bad = RuleBlock { formulas: vec![vec![Item::part(0), Item::conn(3)]] };
        let err = SubstitutionSystem::new(
            "bad",
            a,
            vec!["P".into()],
            vec![Segment::point()],
            vec![],
            vec![bad],
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RuleReference { .. }));
    }

    #[test]
    fn inadmissible_rule_surfaces() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let block = RuleBlock { formulas: vec![vec![Item::part(0), Item::part(0)]] };
        let s = SubstitutionSystem::new(
            "aa",
            a.clone(),
            vec!["P".into()],
            vec![Segment::parse(&a, "[a]").unwrap()],
            vec![],
            vec![block],
            0,
        )
        .unwrap();
        assert!(matches!(s.generation(1), Err(Error::AdmissibilityViolation { position: 0 })));
    }

    #[test]
    fn formula_round_trip() {
        let names = vec!["I".to_string(), "J".to_string()];
        let f = SubstitutionSystem::parse_formula(&names, "J #1 I~ J^-1").unwrap();
        assert_eq!(f, vec![Item::part(1), Item::conn(1), Item::part_rev(0), Item::part_rev(1)]);
        assert!(SubstitutionSystem::parse_formula(&names, "K").is_err());
        assert!(SubstitutionSystem::parse_formula(&names, "#x").is_err());
    }
}
