use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::linear::step;
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, LabelSet, SubstitutionSystem, Symbol};

/// Elementary abelian 2-group indexing the copies of `J_∞`, with the
/// generators that act on the shared endpoint by translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverGroup {
    rank: u8,
    /// Names of the basis bits, lowest first.
    basis: Vec<String>,
    /// Generators that cross the glue, with the element they multiply by.
    glue: Vec<(String, u8)>,
}

impl CoverGroup {
    /// `{1, b, c, d}` with `b = 01`, `c = 10`, `d = 11`.
    pub fn klein() -> Self {
        CoverGroup {
            rank: 2,
            basis: vec!["b".into(), "c".into()],
            glue: vec![("b".into(), 0b01), ("c".into(), 0b10), ("d".into(), 0b11)],
        }
    }

    /// `⟨x⟩ × ⟨y⟩ × {1, b, c, d}`.
    pub fn rank_four() -> Self {
        CoverGroup {
            rank: 4,
            basis: vec!["x".into(), "y".into(), "b".into(), "c".into()],
            glue: vec![
                ("x".into(), 0b0001),
                ("y".into(), 0b0010),
                ("b".into(), 0b0100),
                ("c".into(), 0b1000),
                ("d".into(), 0b1100),
            ],
        }
    }

    /// Klein cover for `ghat`, rank four for `galpha[..]`.
    pub fn for_system(system: &SubstitutionSystem) -> Result<Self> {
        if system.id() == "ghat" {
            Ok(CoverGroup::klein())
        } else if system.id().starts_with("galpha") {
            Ok(CoverGroup::rank_four())
        } else {
            Err(Error::Precondition(format!("no Ξ cover is defined for `{}`", system.id())))
        }
    }

    pub fn new(rank: u8, basis: Vec<String>, glue: Vec<(String, u8)>) -> Result<Self> {
        if rank == 0 || rank > 8 || basis.len() != rank as usize {
            return Err(Error::Precondition("cover rank must match its basis (1..=8)".into()));
        }
        if glue.iter().any(|&(_, h)| h == 0 || (rank < 8 && h >> rank != 0)) {
            return Err(Error::Precondition("glue elements must be nontrivial group elements".into()));
        }
        Ok(CoverGroup { rank, basis, glue })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn order(&self) -> usize {
        1 << self.rank
    }

    pub fn glue(&self) -> &[(String, u8)] {
        &self.glue
    }

    /// Element as a product of generator names; `1` for the identity.
    ///
    /// The Klein part prints as a single letter (`d` rather than `b·c`).
    pub fn name(&self, h: u8) -> String {
        if h == 0 {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut rest = h;
        // whole glue letters first, largest element first, so d wins over b·c
        let mut letters: Vec<&(String, u8)> = self.glue.iter().collect();
        letters.sort_by_key(|(_, e)| std::cmp::Reverse(e.count_ones()));
        let mut chosen = Vec::new();
        for (name, e) in letters {
            if rest & e == *e {
                rest ^= e;
                chosen.push((*e, name.clone()));
            }
        }
        chosen.sort();
        parts.extend(chosen.into_iter().map(|(_, n)| n));
        for (i, b) in self.basis.iter().enumerate() {
            if rest >> i & 1 == 1 {
                parts.push(b.clone());
            }
        }
        parts.join("·")
    }

    /// Parses a product such as `x·b`, `x*y` or `1`.
    pub fn parse(&self, text: &str) -> Result<u8> {
        let t = text.trim();
        if t == "1" || t.is_empty() {
            return Ok(0);
        }
        t.split(['·', '*'])
            .map(str::trim)
            .try_fold(0u8, |acc, part| {
                if let Some(&(_, e)) = self.glue.iter().find(|(n, _)| n == part) {
                    return Ok(acc ^ e);
                }
                match self.basis.iter().position(|b| b == part) {
                    Some(i) => Ok(acc ^ (1 << i)),
                    None => Err(Error::Parse(format!("`{part}` is not a cover generator"))),
                }
            })
    }
}

/// A vertex of Ξ: position along `J_N` in a given copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XiVertex {
    pub copy: u8,
    pub pos: usize,
}

impl fmt::Display for XiVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, #{})", self.pos, self.copy)
    }
}

/// Copies of a truncated `J_N`, one per element of a [`CoverGroup`], glued at
/// their common left endpoint `ξ` (vertex 0) by the Cayley graph of the group.
#[derive(Clone, Debug)]
pub struct XiGraph {
    system_id: String,
    alphabet: Arc<Alphabet>,
    generation: usize,
    sets: Vec<LabelSet>,
    cover: CoverGroup,
    glue_of: [u8; 64],
}

impl XiGraph {
    /// Ξ for the built-in systems `ghat` (Klein cover) and `galpha[..]` (rank four).
    pub fn build(system: &SubstitutionSystem, n: usize) -> Result<XiGraph> {
        let cover = CoverGroup::for_system(system)?;
        if n < 2 {
            return Err(Error::Precondition("Ξ needs N >= 2".into()));
        }
        let j = system.segment(n, "J")?;
        XiGraph::new(system.id(), system.alphabet_arc(), n, j.sets().to_vec(), cover)
    }

    /// Glues copies of `sets` with the given cover and checks the labeling.
    pub fn new(
        system_id: &str,
        alphabet: Arc<Alphabet>,
        generation: usize,
        sets: Vec<LabelSet>,
        cover: CoverGroup,
    ) -> Result<XiGraph> {
        let mut glue_of = [0u8; 64];
        for (name, h) in &cover.glue {
            let s = alphabet.index(name).ok_or_else(|| {
                Error::Precondition(format!("glue label `{name}` is not in the alphabet"))
            })?;
            glue_of[s as usize] = *h;
        }
        let xi = XiGraph {
            system_id: system_id.to_string(),
            alphabet,
            generation,
            sets,
            cover,
            glue_of,
        };
        xi.check_perfect_labeling()?;
        Ok(xi)
    }

    pub fn system_id(&self) -> &str {
        &self.system_id
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn cover(&self) -> &CoverGroup {
        &self.cover
    }

    /// Label sets of one copy of `J_N`.
    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    /// Last vertex of each copy (the truncation boundary).
    pub fn end(&self) -> usize {
        self.sets.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.cover.order() * (self.sets.len() + 1)
    }

    /// Undirected glue edges (one per unordered pair of copies and label).
    pub fn glue_edges(&self) -> Vec<(XiVertex, Symbol, XiVertex)> {
        let mut out = Vec::new();
        for s in self.alphabet.symbols() {
            let h = self.glue_of[s as usize];
            if h == 0 {
                continue;
            }
            for copy in 0..self.cover.order() as u8 {
                if copy < copy ^ h {
                    out.push((XiVertex { copy, pos: 0 }, s, XiVertex { copy: copy ^ h, pos: 0 }));
                }
            }
        }
        out
    }

    /// Glue element of a generator (0 if it does not cross at `ξ`).
    pub fn glue_element(&self, s: Symbol) -> u8 {
        self.glue_of[s as usize]
    }

    /// Every vertex except the truncated far ends sees each generator exactly
    /// once, as an edge or a loop.
    pub fn check_perfect_labeling(&self) -> Result<()> {
        let len = self.sets.len();
        for copy in 0..self.cover.order() as u8 {
            for pos in 0..len {
                let mut seen = 0u64;
                let mut incident: Vec<u64> = vec![self.sets[pos].bits()];
                if pos > 0 {
                    incident.push(self.sets[pos - 1].bits());
                } else {
                    let glue = self
                        .alphabet
                        .symbols()
                        .filter(|&s| self.glue_of[s as usize] != 0)
                        .fold(0u64, |acc, s| acc | 1 << s);
                    incident.push(glue);
                }
                for bits in incident {
                    if seen & bits != 0 {
                        let s = (seen & bits).trailing_zeros() as Symbol;
                        return Err(Error::PerfectLabelingViolation {
                            vertex: XiVertex { copy, pos }.to_string(),
                            message: format!(
                                "generator `{}` labels two edges",
                                self.alphabet.name(s)
                            ),
                        });
                    }
                    seen |= bits;
                }
            }
        }
        Ok(())
    }

    pub fn act(&self, s: Symbol, v: XiVertex) -> Result<XiVertex> {
        let len = self.sets.len();
        if v.pos > len || v.copy as usize >= self.cover.order() {
            return Err(Error::BoundaryUndecidable { position: v.pos as i64 });
        }
        if v.pos == 0 {
            let h = self.glue_of[s as usize];
            if h != 0 {
                return Ok(XiVertex { copy: v.copy ^ h, pos: 0 });
            }
        }
        if v.pos == len && !(len > 0 && self.sets[len - 1].contains(s)) {
            return Err(Error::BoundaryUndecidable { position: v.pos as i64 });
        }
        Ok(XiVertex { copy: v.copy, pos: step(&self.sets, s, v.pos) })
    }

    /// Image of `v` under a word (letters applied right to left).
    pub fn act_word(&self, word: &[Symbol], v: XiVertex) -> Result<XiVertex> {
        word.iter().rev().try_fold(v, |v, &s| self.act(s, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::{ghat, galpha, grigorchuk};
    use crate::symbolic::AlphaSequence;

    #[test]
    fn ghat_counts_and_glue() {
        let g = ghat();
        let xi = XiGraph::build(&g, 2).unwrap();
        assert_eq!(xi.vertex_count(), 4 * 8);
        assert_eq!(xi.glue_edges().len(), 6);
        let s = |n: &str| g.alphabet().index(n).unwrap();
        let xi0 = XiVertex { copy: 0, pos: 0 };
        assert_eq!(xi.act(s("b"), xi0).unwrap(), XiVertex { copy: 1, pos: 0 });
        assert_eq!(xi.act(s("d"), XiVertex { copy: 1, pos: 0 }).unwrap(), XiVertex { copy: 2, pos: 0 });
        assert_eq!(xi.act(s("a2"), xi0).unwrap(), XiVertex { copy: 0, pos: 1 });
        assert_eq!(xi.act(s("a0"), xi0).unwrap(), xi0);
        assert_eq!(xi.act_word(&[], xi0).unwrap(), xi0);
    }

    #[test]
    fn glue_collision_is_rejected() {
        let g = ghat();
        // a glue label that already labels the first edge of J_2
        let j = g.segment(2, "J").unwrap().sets().to_vec();
        let cover = CoverGroup::new(2, vec!["b".into(), "c".into()], vec![("a2".into(), 1)]).unwrap();
        let err = XiGraph::new("ghat", g.alphabet_arc(), 2, j, cover).unwrap_err();
        assert!(matches!(err, Error::PerfectLabelingViolation { .. }));
        assert!(XiGraph::build(&grigorchuk(), 3).is_err());
    }

    #[test]
    fn galpha_cover() {
        let g = galpha(&AlphaSequence::all_sigma()).unwrap();
        let xi = XiGraph::build(&g, 2).unwrap();
        assert_eq!(xi.cover().order(), 16);
        let k = xi.cover();
        assert_eq!(k.name(0b1100), "d");
        assert_eq!(k.name(0b0101), "x·b");
        assert_eq!(k.parse("x·b").unwrap(), 0b0101);
        assert_eq!(k.parse("b*c").unwrap(), 0b1100);
    }
}
