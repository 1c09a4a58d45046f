//! Executable checks of the combinatorial hypotheses behind minimality,
//! linear repetitivity and the torsion/growth theorem.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WindowUniverse;
use crate::symbolic::segment::contains;
use crate::symbolic::{Item, LabelSet, Segment, SubstitutionSystem};

#[derive(Clone, Debug, Serialize)]
pub struct LinrepReport {
    pub system: String,
    pub from: usize,
    pub to: usize,
    /// Every generation-`n+1` segment re-materializes from its rule, and every
    /// rule uses at least one generation-`n` segment.
    pub concatenation: bool,
    pub concatenation_failures: Vec<String>,
    /// Most generation-`n` segments used by one rule on the range.
    pub max_segment_parts: usize,
    /// Most items (segments and connectors) used by one rule on the range.
    pub max_items: usize,
    /// Number of named segments per generation.
    pub segments_per_generation: usize,
    /// Largest item count over the whole periodic rule table, which bounds
    /// every generation.
    pub table_bound: usize,
    pub bounded_rules: bool,
    /// Smallest `k` such that every adjacent pair of level-`n` items occurs in
    /// some generation-`n + k` segment, with the number of pairs checked.
    pub recurrence_k: Option<usize>,
    pub recurrence_pairs: usize,
    pub pass: bool,
}

impl fmt::Display for LinrepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "linear repetitivity hypotheses for {} on generations {}..={}", self.system, self.from, self.to)?;
        writeln!(f, "  concatenation form: {}", verdict(self.concatenation))?;
        for m in &self.concatenation_failures {
            writeln!(f, "      {m}")?;
        }
        match self.recurrence_k {
            Some(k) => writeln!(f, "  adjacent pairs recur after k = {k} ({} pairs)", self.recurrence_pairs)?,
            None => writeln!(f, "  adjacent pairs: no k found ({} pairs)", self.recurrence_pairs)?,
        }
        writeln!(
            f,
            "  bounded rules: parts <= {}, items <= {}, |X_n| = {}, table bound {}: {}",
            self.max_segment_parts,
            self.max_items,
            self.segments_per_generation,
            self.table_bound,
            verdict(self.bounded_rules)
        )?;
        write!(f, "  verdict: {}", verdict(self.pass))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn materialize_items(system: &SubstitutionSystem, items: &[Item], level: usize) -> Result<Vec<LabelSet>> {
    let prev = system.generation(level)?;
    Ok(system.materialize(items, &prev)?.sets().to_vec())
}

/// Checks the concatenation form and rule bounds exactly on steps `from..to` (generation `n`
/// to `n + 1`), and searches the recurrence depth `k` up to `k_cap` using the adjacent
/// pairs of level-`n` items inside generations up to `n + depth`.
pub fn check_linrep_hypotheses(
    system: &SubstitutionSystem,
    from: usize,
    to: usize,
    depth: usize,
    k_cap: usize,
) -> Result<LinrepReport> {
    if from >= to {
        return Err(Error::Precondition(format!("empty range {from}..{to}")));
    }
    let mut failures = Vec::new();
    let mut max_parts = 0;
    let mut max_items = 0;
    for n in from..to {
        let block = system.block_for_step(n);
        let prev = system.generation(n)?;
        let next = system.generation(n + 1)?;
        for (idx, formula) in block.formulas.iter().enumerate() {
            let parts = formula.iter().filter(|i| i.is_part()).count();
            max_parts = max_parts.max(parts);
            max_items = max_items.max(formula.len());
            if parts == 0 {
                failures.push(format!(
                    "{} of generation {} uses no generation-{n} segment",
                    system.names()[idx],
                    n + 1
                ));
            }
            if system.materialize(formula, &prev)? != next[idx] {
                failures.push(format!("{} of generation {} differs from its rule", system.names()[idx], n + 1));
            }
        }
    }
    let table_bound = system
        .blocks()
        .iter()
        .flat_map(|b| b.formulas.iter().map(Vec::len))
        .max()
        .unwrap_or(0);

    let mut k_found: Option<usize> = Some(0);
    let mut pair_count = 0;
    for n in from..to {
        let mut pairs: BTreeSet<(Item, Item)> = BTreeSet::new();
        for m in n + 1..=n + depth {
            for items in system.decompose(m, n)? {
                pairs.extend(items.windows(2).map(|w| (w[0], w[1])));
            }
        }
        pair_count += pairs.len();
        let segs: Vec<Vec<LabelSet>> = pairs
            .iter()
            .map(|&(a, b)| materialize_items(system, &[a, b], n))
            .collect::<Result<_>>()?;
        let mut k_n = None;
        for k in 1..=k_cap {
            let hay: Vec<Vec<LabelSet>> = system
                .generation(n + k)?
                .iter()
                .flat_map(|s| [s.sets().to_vec(), s.reversed().sets().to_vec()])
                .collect();
            if segs.iter().all(|p| hay.iter().any(|h| contains(h, p))) {
                k_n = Some(k);
                break;
            }
        }
        k_found = match (k_found, k_n) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    let concatenation = failures.is_empty();
    let bounded_rules = max_items <= table_bound;
    Ok(LinrepReport {
        system: system.id().to_string(),
        from,
        to,
        concatenation,
        concatenation_failures: failures,
        max_segment_parts: max_parts,
        max_items,
        segments_per_generation: system.names().len(),
        table_bound,
        bounded_rules,
        recurrence_k: k_found,
        recurrence_pairs: pair_count,
        pass: concatenation && bounded_rules && k_found.is_some(),
    })
}

/// Least `m` in `n..=cap` such that every generation-`m` segment contains every
/// generation-`n` segment (in either orientation).
pub fn minimality_witness(system: &SubstitutionSystem, n: usize, cap: usize) -> Result<Option<usize>> {
    let small = system.generation(n)?;
    for m in n..=cap {
        let big = system.generation(m)?;
        if big.iter().all(|z| small.iter().all(|x| z.contains_unoriented(x))) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub center: String,
    /// Flanks `w` (read outward from the center) with `w⁻¹ e w` in the subshift.
    pub flanks: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremHypothesisReport {
    pub system: String,
    pub radius: usize,
    pub generation: Option<usize>,
    pub centers: Vec<CenterReport>,
    /// Flanks shared by all three centers.
    pub common_flanks: Vec<String>,
    pub missing: Vec<String>,
    pub pass: bool,
}

impl fmt::Display for TheoremHypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symmetric sequences in {} at radius {}:", self.system, self.radius)?;
        for c in &self.centers {
            writeln!(f, "  center {}: {} palindromic windows", c.center, c.flanks.len())?;
        }
        for w in &self.common_flanks {
            writeln!(f, "  common flank {w}")?;
        }
        if !self.missing.is_empty() {
            writeln!(f, "  missing centers: {}", self.missing.join(", "))?;
        }
        write!(f, "  verdict: {}", verdict(self.pass))
    }
}

/// Looks for palindromic factors `w⁻¹ e w` with `|w| = radius` around each of
/// `{c,d}`, `{b,d}`, `{b,c}`, and for a flank `w` common to all three.
pub fn theorem_hypothesis_check(system: &SubstitutionSystem, radius: usize) -> Result<TheoremHypothesisReport> {
    let a = system.alphabet();
    let sym = |n: &str| {
        a.index(n)
            .ok_or_else(|| Error::Precondition(format!("alphabet has no generator `{n}`")))
    };
    let (b, c, d) = (sym("b")?, sym("c")?, sym("d")?);
    let centers = [
        LabelSet::from_symbols([c, d])?,
        LabelSet::from_symbols([b, d])?,
        LabelSet::from_symbols([b, c])?,
    ];
    let universe = WindowUniverse::build(system, radius + 1)?;
    let factors = universe.factors(2 * radius + 1);
    let mut reports = Vec::new();
    let mut flank_sets: Vec<BTreeSet<Vec<LabelSet>>> = Vec::new();
    let mut missing = Vec::new();
    for e in centers {
        let flanks: BTreeSet<Vec<LabelSet>> = factors
            .iter()
            .filter(|f| f[radius] == e && f.iter().eq(f.iter().rev()))
            .map(|f| f[radius + 1..].to_vec())
            .collect();
        if flanks.is_empty() {
            missing.push(e.token(a));
        }
        reports.push(CenterReport {
            center: e.token(a),
            flanks: flanks.iter().map(|w| Segment::from_sets_unchecked(w.clone()).to_tokens(a)).collect(),
        });
        flank_sets.push(flanks);
    }
    let common: Vec<String> = flank_sets[0]
        .iter()
        .filter(|w| flank_sets[1..].iter().all(|s| s.contains(*w)))
        .map(|w| Segment::from_sets_unchecked(w.clone()).to_tokens(a))
        .collect();
    Ok(TheoremHypothesisReport {
        system: system.id().to_string(),
        radius,
        generation: universe.generation(),
        centers: reports,
        pass: missing.is_empty() && !common.is_empty(),
        common_flanks: common,
        missing,
    })
}
