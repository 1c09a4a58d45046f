use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::linear::step;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::symbolic::segment::parse_sets;
use crate::symbolic::{Alphabet, LabelSet, SubstitutionSystem, Symbol};

/// Default number of consecutive agreeing generations that certify stabilization.
pub const DEFAULT_SPAN: usize = 2;
/// Default generation cap for stabilization.
pub const DEFAULT_GENERATION_CAP: usize = 24;

/// Image of the center of `sets` (a window of radius `sets.len() / 2`) under a
/// word, as a signed offset.
pub fn apply_word(sets: &[LabelSet], word: &[Symbol]) -> Result<i64> {
    let radius = sets.len() / 2;
    if word.len() > radius {
        return Err(Error::WordTooLong { len: word.len(), radius });
    }
    let mut p = radius;
    for &s in word.iter().rev() {
        p = step(sets, s, p);
    }
    Ok(p as i64 - radius as i64)
}

/// Rooted ball of radius `R` in a linear graph: `2R` label sets, center between
/// sets `R - 1` and `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    sets: Vec<LabelSet>,
}

impl Window {
    pub fn new(sets: Vec<LabelSet>) -> Result<Self> {
        if !sets.len().is_multiple_of(2) || sets.is_empty() {
            return Err(Error::Precondition(format!(
                "a window needs a positive even number of sets, got {}",
                sets.len()
            )));
        }
        if let Some(position) = crate::symbolic::segment::first_violation(&sets) {
            return Err(Error::AdmissibilityViolation { position });
        }
        Ok(Window { sets })
    }

    pub fn radius(&self) -> usize {
        self.sets.len() / 2
    }

    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    pub fn apply_word(&self, word: &[Symbol]) -> Result<i64> {
        apply_word(&self.sets, word)
    }
}

const MOD: u64 = (1 << 61) - 1;
const BASE: u64 = 0x1f3d_5b79_a4c3_e2f1 % MOD;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let lo = (p as u64) & MOD;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn digit(s: LabelSet) -> u64 {
    // label sets are nonempty, so every digit is nonzero
    s.bits() % MOD
}

/// Start positions of the distinct length-`len` factors of `seq`, in first-occurrence order.
fn distinct_starts(seq: &[LabelSet], len: usize) -> Vec<usize> {
    if len == 0 || len > seq.len() {
        return Vec::new();
    }
    let mut top = 1u64;
    for _ in 1..len {
        top = mulmod(top, BASE);
    }
    let mut h = 0u64;
    for &s in &seq[..len] {
        h = (mulmod(h, BASE) + digit(s)) % MOD;
    }
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut out = Vec::new();
    let mut start = 0;
    loop {
        let bucket = seen.entry(h).or_default();
        let window = &seq[start..start + len];
        if !bucket.iter().any(|&o| &seq[o..o + len] == window) {
            bucket.push(start);
            out.push(start);
        }
        if start + len == seq.len() {
            break;
        }
        let drop = mulmod(digit(seq[start]), top);
        h = (h + MOD - drop) % MOD;
        h = (mulmod(h, BASE) + digit(seq[start + len])) % MOD;
        start += 1;
    }
    out
}

/// Distinct factors of length `len` over several sources, sorted by content.
/// Each factor is given as `(source, start)`.
fn distinct_factors(exec: Exec, sources: &[Vec<LabelSet>], len: usize) -> Vec<(u32, u32)> {
    let local: Vec<Vec<usize>> = exec.map(sources, |seq| distinct_starts(seq, len));
    let mut all: Vec<(u32, u32)> = Vec::new();
    for (src, starts) in local.into_iter().enumerate() {
        all.extend(starts.into_iter().map(|s| (src as u32, s as u32)));
    }
    let slice = |&(src, start): &(u32, u32)| &sources[src as usize][start as usize..start as usize + len];
    all.sort_by(|a, b| slice(a).cmp(slice(b)).then(a.cmp(b)));
    all.dedup_by(|a, b| slice(a) == slice(b));
    all
}

fn with_reversals(segments: impl IntoIterator<Item = Vec<LabelSet>>) -> Vec<Vec<LabelSet>> {
    let mut out = Vec::new();
    for seq in segments {
        let mut rev = seq.clone();
        rev.reverse();
        out.push(seq);
        out.push(rev);
    }
    out
}

fn is_reversal_closed(sources: &[Vec<LabelSet>], entries: &[(u32, u32)], len: usize) -> bool {
    let slice = |&(src, start): &(u32, u32)| &sources[src as usize][start as usize..start as usize + len];
    entries.iter().all(|e| {
        let mut rev = slice(e).to_vec();
        rev.reverse();
        entries.binary_search_by(|x| slice(x).cmp(rev.as_slice())).is_ok()
    })
}

/// Every radius-`R` window of a subshift, deduplicated and sorted.
///
/// Windows are stored as offsets into a few long source sequences, so the
/// memory cost stays linear in the source length even for large radii.
#[derive(Clone, Debug)]
pub struct WindowUniverse {
    id: String,
    alphabet: Arc<Alphabet>,
    radius: usize,
    sources: Arc<Vec<Vec<LabelSet>>>,
    entries: Vec<(u32, u32)>,
    generation: Option<usize>,
    span: usize,
    reversal_closed: bool,
}

impl WindowUniverse {
    /// Windows of the subshift generated by `system`, with the default span and cap.
    pub fn build(system: &SubstitutionSystem, radius: usize) -> Result<Self> {
        Self::from_system(system, radius, DEFAULT_SPAN, DEFAULT_GENERATION_CAP, Exec::default())
    }

    /// Collects all length-`2R` factors of the generation-`m` segments and their
    /// reversals, increasing `m` until the set is the same for generations
    /// `m..=m + span`. Generations too short to hold a window are skipped.
    pub fn from_system(
        system: &SubstitutionSystem,
        radius: usize,
        span: usize,
        cap: usize,
        exec: Exec,
    ) -> Result<Self> {
        if radius == 0 {
            return Err(Error::Precondition("radius must be at least 1".into()));
        }
        if span < 2 {
            return Err(Error::Precondition("stability span must be at least 2".into()));
        }
        let len = 2 * radius;
        struct Gen {
            forward: usize,
            sources: Vec<Vec<LabelSet>>,
            entries: Vec<(u32, u32)>,
        }
        let same = |a: &Gen, b: &Gen| {
            a.entries.len() == b.entries.len()
                && a.entries.iter().zip(&b.entries).all(|(x, y)| {
                    let sx = &a.sources[x.0 as usize][x.1 as usize..x.1 as usize + len];
                    let sy = &b.sources[y.0 as usize][y.1 as usize..y.1 as usize + len];
                    sx == sy
                })
        };
        let mut history: Vec<(usize, Gen)> = Vec::new();
        for m in 0..=cap {
            let generation = match system.generation(m) {
                Ok(g) => g,
                Err(Error::SegmentTooLong { .. }) => break,
                Err(e) => return Err(e),
            };
            let forward = generation.len();
            let sources = with_reversals(generation.iter().map(|s| s.sets().to_vec()));
            let entries = distinct_factors(exec, &sources, len);
            if entries.is_empty() {
                continue;
            }
            let gen = Gen { forward, sources, entries };
            if let Some((_, last)) = history.last() {
                if !same(last, &gen) {
                    history.clear();
                }
            }
            history.push((m, gen));
            if history.len() > span {
                // Closure is judged on the newest generation: the stabilizing one
                // can be too short to hold both orientations of a window.
                let (_, newest) = history.last().expect("nonempty history");
                let forward_sources: Vec<Vec<LabelSet>> = newest
                    .sources
                    .iter()
                    .step_by(2)
                    .take(newest.forward)
                    .cloned()
                    .collect();
                let forward_entries = distinct_factors(exec, &forward_sources, len);
                let reversal_closed = forward_entries.len() == newest.entries.len()
                    && is_reversal_closed(&forward_sources, &forward_entries, len);
                let (first_m, first) = history.swap_remove(0);
                return Ok(WindowUniverse {
                    id: system.id().to_string(),
                    alphabet: system.alphabet_arc(),
                    radius,
                    sources: Arc::new(first.sources),
                    entries: first.entries,
                    generation: Some(first_m),
                    span,
                    reversal_closed,
                });
            }
        }
        Err(Error::NoStabilization { max_generation: cap })
    }

    /// Windows of the given finite sequences (optionally with their reversals).
    pub fn from_segments(
        id: impl Into<String>,
        alphabet: Arc<Alphabet>,
        segments: &[Vec<LabelSet>],
        radius: usize,
        add_reversals: bool,
    ) -> Result<Self> {
        if radius == 0 {
            return Err(Error::Precondition("radius must be at least 1".into()));
        }
        let len = 2 * radius;
        let forward: Vec<Vec<LabelSet>> = segments.to_vec();
        let forward_entries = distinct_factors(Exec::default(), &forward, len);
        if forward_entries.is_empty() {
            return Err(Error::InsufficientAmbient(format!(
                "no source holds a window of radius {radius}"
            )));
        }
        let reversal_closed = is_reversal_closed(&forward, &forward_entries, len);
        let (sources, entries) = if add_reversals && !reversal_closed {
            let sources = with_reversals(segments.iter().cloned());
            let entries = distinct_factors(Exec::default(), &sources, len);
            (sources, entries)
        } else {
            (forward, forward_entries)
        };
        Ok(WindowUniverse {
            id: id.into(),
            alphabet,
            radius,
            sources: Arc::new(sources),
            entries,
            generation: None,
            span: 0,
            reversal_closed,
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

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Generation at which the window set stabilized (`None` for universes
    /// built from explicit segments).
    pub fn generation(&self) -> Option<usize> {
        self.generation
    }

    pub fn span(&self) -> usize {
        self.span
    }

    /// Whether the forward factors were already closed under reversal.
    pub fn reversal_closed(&self) -> bool {
        self.reversal_closed
    }

    /// The `i`th window in sorted order.
    pub fn window(&self, i: usize) -> &[LabelSet] {
        let (src, start) = self.entries[i];
        &self.sources[src as usize][start as usize..start as usize + 2 * self.radius]
    }

    pub fn windows(&self) -> impl Iterator<Item = &[LabelSet]> + '_ {
        (0..self.len()).map(move |i| self.window(i))
    }

    pub fn position(&self, sets: &[LabelSet]) -> Option<usize> {
        if sets.len() != 2 * self.radius {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.window(mid).cmp(sets) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, sets: &[LabelSet]) -> bool {
        self.position(sets).is_some()
    }

    /// The sequences windows are cut from.
    pub fn sources(&self) -> &[Vec<LabelSet>] {
        &self.sources
    }

    /// Distinct factors of any length of the source sequences, sorted.
    pub fn factors(&self, len: usize) -> Vec<Vec<LabelSet>> {
        distinct_factors(Exec::default(), &self.sources, len)
            .into_iter()
            .map(|(src, start)| {
                self.sources[src as usize][start as usize..start as usize + len].to_vec()
            })
            .collect()
    }

    /// Central radius-`r` parts of every window (`r <= R`).
    pub fn restricted(&self, r: usize) -> Result<WindowUniverse> {
        if r == 0 || r > self.radius {
            return Err(Error::Precondition(format!(
                "cannot restrict radius {} to {r}",
                self.radius
            )));
        }
        let cut = self.radius - r;
        let sources: Vec<Vec<LabelSet>> =
            self.windows().map(|w| w[cut..cut + 2 * r].to_vec()).collect();
        let entries = distinct_factors(Exec::Sequential, &sources, 2 * r);
        Ok(WindowUniverse {
            id: self.id.clone(),
            alphabet: self.alphabet.clone(),
            radius: r,
            sources: Arc::new(sources),
            entries,
            generation: self.generation,
            span: self.span,
            reversal_closed: self.reversal_closed,
        })
    }

    /// Sorted line-oriented text: a `#` header, then one window per line.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let generation = self.generation.map_or("-".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            "# universe {} radius={} generation={} span={} windows={}",
            self.id,
            self.radius,
            generation,
            self.span,
            self.len()
        );
        for w in self.windows() {
            for s in w {
                s.write_token(&self.alphabet, &mut out);
            }
            out.push('\n');
        }
        out
    }

    /// Reads the output of [`export`](Self::export) back.
    pub fn import(alphabet: Arc<Alphabet>, text: &str) -> Result<WindowUniverse> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix("# universe "))
            .ok_or_else(|| Error::Parse("missing universe header".into()))?;
        let mut fields = header.split_whitespace();
        let id = fields.next().unwrap_or_default().to_string();
        let mut radius = None;
        let mut generation = None;
        let mut span = 0;
        for f in fields {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field `{f}`")))?;
            let num = || v.parse::<usize>().map_err(|_| Error::Parse(format!("bad value in `{f}`")));
            match k {
                "radius" => radius = Some(num()?),
                "generation" if v != "-" => generation = Some(num()?),
                "span" => span = num()?,
                _ => {}
            }
        }
        let radius = radius.ok_or_else(|| Error::Parse("header lacks radius".into()))?;
        let mut sources = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let sets = parse_sets(&alphabet, line)?;
            let w = Window::new(sets)?;
            if w.radius() != radius {
                return Err(Error::Parse(format!("window of radius {} in a radius-{radius} file", w.radius())));
            }
            sources.push(w.sets);
        }
        let entries = distinct_factors(Exec::Sequential, &sources, 2 * radius);
        let reversal_closed = is_reversal_closed(&sources, &entries, 2 * radius);
        Ok(WindowUniverse {
            id,
            alphabet,
            radius,
            sources: Arc::new(sources),
            entries,
            generation,
            span,
            reversal_closed,
        })
    }
}
