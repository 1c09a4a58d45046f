//! Whether two members of the α family have the same Cayley ball.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::WindowUniverse;
use crate::group::signature::{digest, extend};
use crate::symbolic::builtin::galpha;
use crate::symbolic::{AlphaEntry, AlphaSequence, SubstitutionSystem};

#[derive(Clone, Debug, Serialize)]
pub struct AgreementRow {
    pub length: usize,
    /// Distinct pairs of elements reached by the same words.
    pub pairs: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub first: String,
    pub second: String,
    pub radius: usize,
    pub rows: Vec<AgreementRow>,
    pub first_disagreement: Option<usize>,
    pub agree: bool,
}

impl fmt::Display for AgreementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "balls of {} and {} up to radius {}", self.first, self.second, self.radius)?;
        for r in &self.rows {
            writeln!(f, "  r={:<3} pairs={:<8} {:<8} {}", r.length, r.pairs, r.first, r.second)?;
        }
        match self.first_disagreement {
            Some(r) => write!(f, "  first disagreement at radius {r}"),
            None => write!(f, "  agree"),
        }
    }
}

/// Joint breadth-first search over words of length `≤ radius`.
///
/// The balls agree up to radius `r` when the words of length `≤ r` induce
/// the same equality relation in both groups, which holds exactly when the
/// number of distinct pairs equals the class count on either side.
pub fn ball_agreement_systems(
    s1: &SubstitutionSystem,
    s2: &SubstitutionSystem,
    radius: usize,
    exec: Exec,
) -> Result<AgreementReport> {
    if s1.alphabet() != s2.alphabet() {
        return Err(Error::Precondition("systems use different alphabets".into()));
    }
    let u1 = WindowUniverse::build(s1, radius + 1)?;
    let u2 = WindowUniverse::build(s2, radius + 1)?;
    let gens: Vec<u8> = s1.alphabet().symbols().collect();

    let start = (vec![0i32; u1.len()], vec![0i32; u2.len()]);
    let key = |p: &(Vec<i32>, Vec<i32>)| (digest(&p.0), digest(&p.1));
    let mut pairs: HashSet<(u128, u128)> = HashSet::from([key(&start)]);
    let mut firsts: HashSet<u128> = HashSet::from([digest(&start.0)]);
    let mut seconds: HashSet<u128> = HashSet::from([digest(&start.1)]);
    let mut frontier = vec![start];
    let mut rows = vec![AgreementRow { length: 0, pairs: 1, first: 1, second: 1 }];
    let mut first_disagreement = None;
    for length in 1..=radius {
        let candidates: Vec<(Vec<i32>, Vec<i32>)> = exec
            .map(&frontier, |(o1, o2)| {
                gens.iter()
                    .map(|&s| (extend(&u1, o1, s), extend(&u2, o2, s)))
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            if pairs.insert(key(&c)) {
                firsts.insert(digest(&c.0));
                seconds.insert(digest(&c.1));
                next.push(c);
            }
        }
        frontier = next;
        let row = AgreementRow { length, pairs: pairs.len(), first: firsts.len(), second: seconds.len() };
        if first_disagreement.is_none() && !(row.pairs == row.first && row.pairs == row.second) {
            first_disagreement = Some(length);
        }
        rows.push(row);
        if first_disagreement.is_some() {
            break;
        }
    }
    Ok(AgreementReport {
        first: s1.id().to_string(),
        second: s2.id().to_string(),
        radius,
        rows,
        agree: first_disagreement.is_none(),
        first_disagreement,
    })
}

pub fn ball_agreement(a1: &AlphaSequence, a2: &AlphaSequence, radius: usize, exec: Exec) -> Result<AgreementReport> {
    ball_agreement_systems(&galpha(a1)?, &galpha(a2)?, radius, exec)
}

/// Smallest `n` such that every generation-`n` segment of `galpha(α)` has at
/// least `2R` label sets.
pub fn recipe_depth(alpha: &AlphaSequence, radius: usize) -> Result<usize> {
    let system = galpha(alpha)?;
    for n in 0..32 {
        if system.generation(n)?.iter().all(|s| s.len() >= 2 * radius) {
            return Ok(n);
        }
    }
    Err(Error::ResourceCap("segments stay shorter than 2R up to generation 32".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructedAgreement {
    pub radius: usize,
    pub recipe_n: usize,
    /// Smallest `n` whose perturbed sequence agrees empirically.
    pub empirical_n: Option<usize>,
    pub report: AgreementReport,
}

impl fmt::Display for ConstructedAgreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "σ^n, xy, σ, … against σ, σ, … at radius {}", self.radius)?;
        writeln!(f, "  recipe n = {}", self.recipe_n)?;
        match self.empirical_n {
            Some(n) => writeln!(f, "  smallest agreeing n = {n}")?,
            None => writeln!(f, "  no agreeing n up to the recipe")?,
        }
        write!(f, "{}", self.report)
    }
}

fn perturbed(n: usize) -> Result<AlphaSequence> {
    let mut prefix = vec![AlphaEntry::Sigma; n];
    prefix.push(AlphaEntry::word("xy")?);
    AlphaSequence::with_sigma_tail(prefix)
}

/// Compares `(σ, σ, …)` with `(σⁿ, xy, σ, …)` for the recipe's `n`, and
/// searches below it for the smallest `n` that already agrees.
pub fn constructed_agreement(radius: usize, exec: Exec) -> Result<ConstructedAgreement> {
    let sigma = AlphaSequence::all_sigma();
    let recipe_n = recipe_depth(&sigma, radius)?;
    let report = ball_agreement(&sigma, &perturbed(recipe_n)?, radius, exec)?;
    let mut empirical_n = None;
    for n in 0..=recipe_n {
        if ball_agreement(&sigma, &perturbed(n)?, radius, exec)?.agree {
            empirical_n = Some(n);
            break;
        }
    }
    Ok(ConstructedAgreement { radius, recipe_n, empirical_n, report })
}
