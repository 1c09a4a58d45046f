use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::symbolic::{LabelSet, SubstitutionSystem};

/// Largest gap between consecutive occurrences for one factor length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub length: usize,
    pub factors: usize,
    pub max_gap: usize,
    /// Factors occurring only once, whose gap is unbounded within the sample.
    pub unbounded: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepetitivityReport {
    pub system: String,
    pub ambient_generation: Option<usize>,
    pub ambient_length: usize,
    pub rows: Vec<GapRow>,
    /// `max C_n / n` over the tested lengths.
    pub constant: f64,
    pub bound: Option<f64>,
    pub monotone: bool,
    pub pass: bool,
}

impl fmt::Display for RepetitivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "repetitivity of {} (ambient length {}): L = {:.3} [{}]",
            self.system,
            self.ambient_length,
            self.constant,
            if self.pass { "pass" } else { "fail" }
        )?;
        for r in &self.rows {
            write!(f, "  n={:<3} factors={:<5} C_n={}", r.length, r.factors, r.max_gap)?;
            if r.unbounded > 0 {
                write!(f, " unbounded={}", r.unbounded)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Occurrence gaps of every factor of `seq` with length `len`.
///
/// Returns `(factor count, max gap, factors seen fewer than `min_occ` times)`.
fn gap_stats(seq: &[LabelSet], len: usize, min_occ: usize) -> (usize, usize, usize) {
    let mut last: HashMap<&[LabelSet], (usize, usize, usize)> = HashMap::new();
    for (i, w) in seq.windows(len).enumerate() {
        let e = last.entry(w).or_insert((i, 0, 0));
        if e.2 > 0 {
            e.1 = e.1.max(i - e.0);
        }
        e.0 = i;
        e.2 += 1;
    }
    let max_gap = last.values().map(|e| e.1).max().unwrap_or(0);
    let sparse = last.values().filter(|e| e.2 < min_occ).count();
    (last.len(), max_gap, sparse)
}

fn assemble(
    system: String,
    generation: Option<usize>,
    seq: &[LabelSet],
    rows: Vec<GapRow>,
    bound: Option<f64>,
) -> RepetitivityReport {
    let constant = rows
        .iter()
        .filter(|r| r.max_gap > 0)
        .map(|r| r.max_gap as f64 / r.length as f64)
        .fold(0.0, f64::max);
    let monotone = rows.windows(2).all(|w| w[0].max_gap <= w[1].max_gap);
    let bounded = rows.iter().all(|r| r.unbounded == 0);
    let within = rows.iter().all(|r| r.max_gap as f64 <= constant * r.length as f64 + 1e-9);
    let pass = bounded && within && bound.is_none_or(|b| constant <= b);
    RepetitivityReport {
        system,
        ambient_generation: generation,
        ambient_length: seq.len(),
        rows,
        constant,
        bound,
        monotone,
        pass,
    }
}

/// Gap statistics of a raw sequence; factors seen once are flagged unbounded.
pub fn repetitivity_of_sequence(
    name: &str,
    seq: &[LabelSet],
    max_len: usize,
    bound: Option<f64>,
    exec: Exec,
) -> RepetitivityReport {
    let rows = exec.map_range(max_len, |i| {
        let (factors, max_gap, unbounded) = gap_stats(seq, i + 1, 2);
        GapRow { length: i + 1, factors, max_gap, unbounded }
    });
    assemble(name.to_string(), None, seq, rows, bound)
}

/// Gap statistics on the longest segment of one generation.
///
/// Every factor must occur at least three times there; otherwise the
/// ambient is too short to say anything and the call fails.
pub fn repetitivity(
    system: &SubstitutionSystem,
    max_len: usize,
    ambient_generation: usize,
    bound: Option<f64>,
    exec: Exec,
) -> Result<RepetitivityReport> {
    let ambient = system.longest(ambient_generation)?;
    let seq = ambient.sets();
    let rows = exec.map_range(max_len, |i| {
        let (factors, max_gap, sparse) = gap_stats(seq, i + 1, 3);
        (GapRow { length: i + 1, factors, max_gap, unbounded: 0 }, sparse)
    });
    if let Some((row, sparse)) = rows.iter().find(|(_, s)| *s > 0) {
        return Err(Error::InsufficientAmbient(format!(
            "{sparse} factors of length {} occur fewer than 3 times in generation {ambient_generation}",
            row.length
        )));
    }
    let rows = rows.into_iter().map(|(r, _)| r).collect();
    Ok(assemble(system.id().to_string(), Some(ambient_generation), seq, rows, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::{dihedral, grigorchuk};
    use crate::symbolic::Segment;

    #[test]
    fn periodic_sequence() {
        let r = repetitivity(&dihedral(), 8, 6, Some(2.0), Exec::Sequential).unwrap();
        assert!(r.rows.iter().all(|row| row.max_gap == 2));
        assert!(r.pass);
    }

    #[test]
    fn grigorchuk_is_linear() {
        let r = repetitivity(&grigorchuk(), 8, 12, None, Exec::Sequential).unwrap();
        assert!(r.pass, "{r}");
        assert!(r.monotone);
        assert!(r.constant <= 16.0, "{r}");
    }

    #[test]
    fn defect_is_flagged() {
        let g = grigorchuk();
        let a = g.alphabet();
        let mut text = "[a][b,c]".repeat(40);
        text.push_str("[a][b,d]");
        text.push_str(&"[a][b,c]".repeat(40));
        let seq = Segment::parse(a, &text).unwrap();
        let r = repetitivity_of_sequence("defect", seq.sets(), 4, None, Exec::Sequential);
        assert!(!r.pass);
        assert!(r.rows[0].unbounded > 0);
        assert!(matches!(
            repetitivity(&g, 8, 4, None, Exec::Sequential),
            Err(Error::InsufficientAmbient(_))
        ));
    }
}
