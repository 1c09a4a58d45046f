//! The subgroups `H_n` of elements that act on every copy of `J_n` and `I_n`
//! the same way, found by closure from seed words and measured with
//! Schreier–Sims.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::cocycle::{cover_for, tau_on};
use crate::error::{Error, Result};
use crate::group::schreier_sims::factorial;
use crate::group::{commutator, group_order, restrict, GroupWord, Perm, Restriction};
use crate::symbolic::{Item, LabelSet, SubstitutionSystem};

/// Tile contexts: every copy of `J_n` and `I_n`, read in its own orientation
/// with `pad` label sets of surrounding context on each side.
#[derive(Clone, Debug)]
pub struct TileContexts {
    pub n: usize,
    pub generation: usize,
    pub pad: usize,
    pub j_len: usize,
    /// `|J_{n-1}|`, the length of each half of `I_n`.
    pub half_len: usize,
    pub j: Vec<Vec<LabelSet>>,
    pub i: Vec<Vec<LabelSet>>,
}

type ContextSets = (BTreeSet<Vec<LabelSet>>, BTreeSet<Vec<LabelSet>>);

fn collect_contexts(system: &SubstitutionSystem, n: usize, m: usize, pad: usize) -> Result<ContextSets> {
    let (ji, ii) = tile_names(system)?;
    let level = system.generation(n)?;
    let mut js = BTreeSet::new();
    let mut is = BTreeSet::new();
    for (seg, items) in system.generation(m)?.iter().zip(system.decompose(m, n)?) {
        let sets = seg.sets();
        let mut off = 0;
        for item in items {
            let len = match item {
                Item::Part { name, .. } => level[name].len(),
                Item::Connector { index, .. } => system.connectors()[index].len(),
            };
            if let Item::Part { name, reversed } = item {
                if off >= pad && off + len + pad <= sets.len() {
                    let mut ctx = sets[off - pad..off + len + pad].to_vec();
                    if reversed {
                        ctx.reverse();
                    }
                    if name == ji {
                        js.insert(ctx);
                    } else if name == ii {
                        is.insert(ctx);
                    }
                }
            }
            off += len;
        }
    }
    Ok((js, is))
}

fn tile_names(system: &SubstitutionSystem) -> Result<(usize, usize)> {
    match (system.name_index("J"), system.name_index("I")) {
        (Some(j), Some(i)) => Ok((j, i)),
        _ => Err(Error::Precondition(format!("`{}` has no segments named I and J", system.id()))),
    }
}

impl TileContexts {
    /// Contexts from generation `ambient`, or from the first generation past
    /// `n + 1` whose context sets agree with the next two.
    pub fn build(system: &SubstitutionSystem, n: usize, pad: usize, ambient: Option<usize>) -> Result<TileContexts> {
        if n == 0 {
            return Err(Error::Precondition("H_n needs n >= 1".into()));
        }
        let j_len = system.segment(n, "J")?.len();
        let half = system.segment(n - 1, "J")?;
        let i_seg = system.segment(n, "I")?;
        let mirrored = i_seg.len() > 2 * half.len()
            && i_seg.sets()[..half.len()] == *half.sets()
            && i_seg.sets()[i_seg.len() - half.len()..] == *half.reversed().sets();
        if !mirrored {
            return Err(Error::Precondition(format!("I_{n} is not J_{} e J_{}⁻¹", n - 1, n - 1)));
        }
        let (generation, (j, i)) = match ambient {
            Some(m) => (m, collect_contexts(system, n, m, pad)?),
            None => {
                let mut found = None;
                let mut prev: Vec<ContextSets> = Vec::new();
                for m in n + 1..=24 {
                    prev.push(collect_contexts(system, n, m, pad)?);
                    let k = prev.len();
                    if k >= 3 && !prev[k - 3].0.is_empty() && prev[k - 3] == prev[k - 2] && prev[k - 2] == prev[k - 1] {
                        found = Some((m - 2, prev.swap_remove(k - 3)));
                        break;
                    }
                }
                found.ok_or(Error::NoStabilization { max_generation: 24 })?
            }
        };
        if j.is_empty() || i.is_empty() {
            return Err(Error::InsufficientAmbient(format!(
                "generation {generation} has no interior copies of both J_{n} and I_{n}"
            )));
        }
        Ok(TileContexts {
            n,
            generation,
            pad,
            j_len,
            half_len: half.len(),
            j: j.into_iter().collect(),
            i: i.into_iter().collect(),
        })
    }

    /// Common action on `J_n` copies and on the first half of `I_n` copies, if
    /// `word` belongs to `H_n`.
    pub fn member(&self, word: &GroupWord) -> Result<Option<(Perm, Perm)>> {
        if word.len() >= self.pad {
            return Err(Error::WordTooLong { len: word.len(), radius: self.pad - 1 });
        }
        let Some(jp) = common_perm(word, &self.j, self.pad, self.j_len)? else {
            return Ok(None);
        };
        let Some(ip) = common_perm(word, &self.i, self.pad, 2 * self.half_len + 1)? else {
            return Ok(None);
        };
        let h = self.half_len + 1;
        let (Some(first), Some(second)) = (ip.slice(0, h), ip.slice(h, h)) else {
            return Ok(None);
        };
        let mirror = Perm::from_images((0..h).map(|x| h - 1 - second.apply(h - 1 - x)).collect())?;
        Ok((first == mirror).then_some((jp, first)))
    }
}

fn common_perm(word: &GroupWord, contexts: &[Vec<LabelSet>], pad: usize, len: usize) -> Result<Option<Perm>> {
    let mut common: Option<Perm> = None;
    for ctx in contexts {
        match restrict(word, ctx, pad, pad + len)? {
            Restriction::NotInvariant { .. } => return Ok(None),
            Restriction::Invariant { perm } => match &common {
                Some(p) if *p != perm => return Ok(None),
                Some(_) => {}
                None => common = Some(perm),
            },
        }
    }
    Ok(common)
}

#[derive(Clone, Debug)]
pub struct HnOptions {
    /// Longest word tried during the closure.
    pub max_len: usize,
    pub rounds: usize,
    /// Members kept per round.
    pub max_frontier: usize,
    pub ambient_generation: Option<usize>,
}

impl Default for HnOptions {
    fn default() -> Self {
        HnOptions { max_len: 40, rounds: 6, max_frontier: 2000, ambient_generation: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HnReport {
    pub system: String,
    pub n: usize,
    pub ambient_generation: usize,
    pub j_contexts: usize,
    pub i_contexts: usize,
    /// Vertices of `J_n` and of half of `I_n`.
    pub j_degree: usize,
    pub half_degree: usize,
    pub members: usize,
    pub sample_members: Vec<String>,
    pub rounds_used: usize,
    pub order: String,
    pub target_order: String,
    /// Order of the elements acting trivially on `I_n`, as a group on `J_n`.
    pub j_kernel_order: String,
    pub j_kernel: String,
    /// Order of the image on half of `I_n`.
    pub i_projection_order: String,
    pub i_projection: String,
    pub phi_checked: usize,
    pub phi_nontrivial: Vec<String>,
    pub pass: bool,
}

impl fmt::Display for HnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H_{} of {} (ambient generation {})", self.n, self.system, self.ambient_generation)?;
        writeln!(f, "  contexts: {} of J_{}, {} of I_{}", self.j_contexts, self.n, self.i_contexts, self.n)?;
        writeln!(f, "  members found: {} in {} rounds", self.members, self.rounds_used)?;
        writeln!(f, "  |H_n| = {} (target {})", self.order, self.target_order)?;
        writeln!(f, "  on J_n ({} points): order {} ({})", self.j_degree, self.j_kernel_order, self.j_kernel)?;
        writeln!(f, "  on I_n halves ({} points): order {} ({})", self.half_degree, self.i_projection_order, self.i_projection)?;
        writeln!(f, "  φ trivial on {} of {} members", self.phi_checked - self.phi_nontrivial.len(), self.phi_checked)?;
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

fn classify(order: &BigUint, degree: usize) -> &'static str {
    let full = factorial(degree);
    if *order == BigUint::from(1u32) {
        "trivial"
    } else if *order == full {
        "symmetric"
    } else if order * 2u32 == full {
        "alternating"
    } else {
        "other"
    }
}

/// Seed words: the generators and their pairwise commutators.
fn seeds(system: &SubstitutionSystem) -> Vec<GroupWord> {
    let letters: Vec<u8> = system.alphabet().symbols().collect();
    let mut out: Vec<GroupWord> = letters.iter().map(|&s| GroupWord::letter(s)).collect();
    for (i, &s) in letters.iter().enumerate() {
        for &t in &letters[i + 1..] {
            out.push(commutator(&GroupWord::letter(s), &GroupWord::letter(t)));
        }
    }
    out
}

/// Closes the seed members under conjugation by generators and commutators
/// with generators, until the full product of symmetric groups is reached or
/// a round adds nothing to the order.
pub fn verify_hn(system: &SubstitutionSystem, n: usize, opts: &HnOptions) -> Result<HnReport> {
    let ctx = TileContexts::build(system, n, opts.max_len + 1, opts.ambient_generation)?;
    let jd = ctx.j_len + 1;
    let hd = ctx.half_len + 1;
    let target = factorial(jd) * factorial(hd);
    let letters: Vec<u8> = system.alphabet().symbols().collect();

    let mut seen: HashSet<Perm> = HashSet::new();
    let mut members: Vec<(GroupWord, Perm, Perm)> = Vec::new();
    let mut frontier = Vec::new();
    let mut consider = |w: GroupWord, members: &mut Vec<_>, frontier: &mut Vec<GroupWord>| -> Result<()> {
        let w = w.free_reduce();
        if w.is_empty() || w.len() > opts.max_len {
            return Ok(());
        }
        if let Some((jp, hp)) = ctx.member(&w)? {
            if seen.insert(jp.join(&hp)) {
                members.push((w.clone(), jp, hp));
                frontier.push(w);
            }
        }
        Ok(())
    };
    for w in seeds(system) {
        consider(w, &mut members, &mut frontier)?;
    }
    let order_of = |members: &[(GroupWord, Perm, Perm)]| -> Result<BigUint> {
        let joined: Vec<Perm> = members.iter().map(|(_, j, h)| j.join(h)).collect();
        Ok(if joined.is_empty() { BigUint::from(1u32) } else { group_order(&joined)? })
    };
    let mut order = order_of(&members)?;
    let mut rounds = 0;
    while order != target && rounds < opts.rounds && !frontier.is_empty() {
        rounds += 1;
        let current = std::mem::take(&mut frontier);
        for u in current.iter().take(opts.max_frontier) {
            for &s in &letters {
                let g = GroupWord::letter(s);
                consider(g.mul(u).mul(&g), &mut members, &mut frontier)?;
                consider(commutator(u, &g), &mut members, &mut frontier)?;
            }
        }
        let grown = order_of(&members)?;
        if grown == order {
            break;
        }
        order = grown;
    }

    let projection: Vec<Perm> = members.iter().map(|(_, _, h)| h.clone()).collect();
    let proj_order = if projection.is_empty() { BigUint::from(1u32) } else { group_order(&projection)? };
    let kernel_order = &order / &proj_order;

    let mut phi_checked = 0;
    let mut phi_bad = Vec::new();
    if let Ok(xi) = cover_for(system, opts.max_len) {
        for (w, _, _) in members.iter().take(200) {
            phi_checked += 1;
            let e = tau_on(&xi, w)?;
            if e.phi_element != 0 {
                phi_bad.push(w.to_text(system.alphabet()));
            }
        }
    }
    let kernel = classify(&kernel_order, jd);
    let proj = classify(&proj_order, hd);
    let big = |c: &str| c == "symmetric" || c == "alternating";
    Ok(HnReport {
        system: system.id().to_string(),
        n,
        ambient_generation: ctx.generation,
        j_contexts: ctx.j.len(),
        i_contexts: ctx.i.len(),
        j_degree: jd,
        half_degree: hd,
        members: members.len(),
        sample_members: members.iter().take(8).map(|(w, _, _)| w.to_text(system.alphabet())).collect(),
        rounds_used: rounds,
        order: order.to_string(),
        target_order: target.to_string(),
        j_kernel_order: kernel_order.to_string(),
        j_kernel: kernel.to_string(),
        i_projection_order: proj_order.to_string(),
        i_projection: proj.to_string(),
        phi_checked,
        pass: big(kernel) && (big(proj) || hd <= 2) && phi_bad.is_empty(),
        phi_nontrivial: phi_bad,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityRow {
    pub word: String,
    pub level: Option<(u8, u8)>,
    pub next_level: Option<(u8, u8)>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub system: String,
    pub n: usize,
    pub rows: Vec<ParityRow>,
    pub pass: bool,
}

impl fmt::Display for ParityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity embedding H_{} -> H_{} on {}", self.n, self.n + 1, self.system)?;
        let show = |p: Option<(u8, u8)>| p.map_or("not a member".to_string(), |(a, b)| format!("({a},{b})"));
        for r in &self.rows {
            writeln!(f, "  {:<12} {} -> {} {}", r.word, show(r.level), show(r.next_level), if r.ok { "ok" } else { "FAIL" })?;
        }
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

/// Parities `(k1, k2)` on `J_n` and on a half of `I_n`; at level `n + 1` the
/// pair must become `(k1, k1)`.
pub fn parity_embedding_check(system: &SubstitutionSystem, n: usize, words: &[GroupWord]) -> Result<ParityReport> {
    let pad = words.iter().map(GroupWord::len).max().unwrap_or(0) + 1;
    let here = TileContexts::build(system, n, pad, None)?;
    let next = TileContexts::build(system, n + 1, pad, None)?;
    let parity = |ctx: &TileContexts, w: &GroupWord| -> Result<Option<(u8, u8)>> {
        Ok(ctx.member(w)?.map(|(j, h)| (j.parity(), h.parity())))
    };
    let mut rows = Vec::new();
    for w in words {
        let level = parity(&here, w)?;
        let next_level = parity(&next, w)?;
        let ok = match (level, next_level) {
            (Some((k1, _)), Some(p)) => p == (k1, k1),
            _ => false,
        };
        rows.push(ParityRow { word: w.to_text(system.alphabet()), level, next_level, ok });
    }
    Ok(ParityReport { system: system.id().to_string(), n, pass: rows.iter().all(|r| r.ok), rows })
}

/// Identity, single generators and products of two generators that lie in
/// `H_n`, as sample words for [`parity_embedding_check`].
pub fn parity_sample_words(system: &SubstitutionSystem, n: usize) -> Result<Vec<GroupWord>> {
    let ctx = TileContexts::build(system, n, 3, None)?;
    let letters: Vec<u8> = system.alphabet().symbols().collect();
    let mut out = vec![GroupWord::identity()];
    for &s in &letters {
        out.push(GroupWord::letter(s));
    }
    for (i, &s) in letters.iter().enumerate() {
        for &t in &letters[i + 1..] {
            out.push(GroupWord::new(vec![s, t]));
        }
    }
    let mut keep = Vec::new();
    for w in out {
        if ctx.member(&w)?.is_some() {
            keep.push(w);
        }
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::{galpha, ghat};
    use crate::symbolic::AlphaSequence;

    #[test]
    fn ghat_h2_is_full() {
        let r = verify_hn(&ghat(), 2, &HnOptions::default()).unwrap();
        assert_eq!(r.order, "967680");
        assert_eq!(r.j_kernel_order, "40320");
        assert_eq!(r.i_projection_order, "24");
        assert!(r.pass);
    }

    #[test]
    fn ghat_members() {
        let g = ghat();
        let ctx = TileContexts::build(&g, 2, 8, None).unwrap();
        let w = |t: &str| GroupWord::parse(g.alphabet(), t).unwrap();
        let (j, h) = ctx.member(&w("a0")).unwrap().unwrap();
        assert_eq!(j.to_string(), "(4 5)");
        assert!(h.is_identity());
        assert!(ctx.member(&w("b")).unwrap().is_none());
    }

    #[test]
    fn parity_samples() {
        let g = ghat();
        let words: Vec<GroupWord> = ["1", "a1", "a0", "a2", "a0 a1"]
            .iter()
            .map(|t| GroupWord::parse(g.alphabet(), t).unwrap())
            .collect();
        let r = parity_embedding_check(&g, 2, &words).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.rows[3].level, Some((0, 1)));
        assert_eq!(r.rows[3].next_level, Some((0, 0)));
    }

    #[test]
    fn galpha_h1() {
        let a = galpha(&AlphaSequence::all_sigma()).unwrap();
        let r = verify_hn(&a, 1, &HnOptions::default()).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.j_kernel, "alternating");
        assert_eq!(r.i_projection, "symmetric");
    }
}
