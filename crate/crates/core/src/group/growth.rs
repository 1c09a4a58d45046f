use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::signature::{digest, extend};
use super::word::GroupWord;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::WindowUniverse;
use crate::symbolic::SubstitutionSystem;

/// Default limit on the number of distinct elements a ball may hold.
pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;

/// Distinct elements of length at most `n`, found breadth first.
///
/// `reps[i]` is the shortlex-first word (left-extension order) reaching
/// element `i`; `spheres[k]` is the index range of elements of length `k`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub reps: Vec<GroupWord>,
    pub offsets: Vec<Vec<i32>>,
    pub spheres: Vec<std::ops::Range<usize>>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Cumulative counts `γ(0..=n)`.
    pub fn gamma(&self) -> Vec<u64> {
        self.spheres.iter().map(|r| r.end as u64).collect()
    }
}

/// Enumerates the ball of radius `n`; `n` must not exceed the universe radius.
pub fn enumerate_ball(universe: &WindowUniverse, n: usize, exec: Exec, max_elements: usize) -> Result<Ball> {
    if n > universe.radius() {
        return Err(Error::Precondition(format!(
            "ball radius {n} exceeds universe radius {}",
            universe.radius()
        )));
    }
    let gens: Vec<u8> = universe.alphabet().symbols().collect();
    let mut ball = Ball {
        radius: n,
        reps: vec![GroupWord::identity()],
        offsets: vec![vec![0; universe.len()]],
        spheres: std::iter::once(0..1).collect(),
    };
    let mut index: HashMap<u128, Vec<usize>> = HashMap::new();
    index.entry(digest(&ball.offsets[0])).or_default().push(0);
    for _ in 0..n {
        let sphere = ball.spheres.last().expect("sphere 0").clone();
        let ids: Vec<usize> = sphere.collect();
        let candidates: Vec<Vec<(Vec<i32>, u128)>> = exec.map(&ids, |&i| {
            gens.iter()
                .map(|&s| {
                    let o = extend(universe, &ball.offsets[i], s);
                    let d = digest(&o);
                    (o, d)
                })
                .collect()
        });
        let start = ball.reps.len();
        for (&i, cands) in ids.iter().zip(candidates) {
            for (&s, (o, d)) in gens.iter().zip(cands) {
                let bucket = index.entry(d).or_default();
                if bucket.iter().any(|&j| ball.offsets[j] == o) {
                    continue;
                }
                bucket.push(ball.reps.len());
                ball.reps.push(ball.reps[i].prepend(s));
                ball.offsets.push(o);
                if ball.reps.len() > max_elements {
                    let partial: Vec<String> = ball.gamma().iter().map(u64::to_string).collect();
                    return Err(Error::ResourceCap(format!(
                        "more than {max_elements} elements; partial growth {}",
                        partial.join(",")
                    )));
                }
            }
        }
        ball.spheres.push(start..ball.reps.len());
    }
    Ok(ball)
}

/// `γ(0), …, γ(n)` for one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub system: String,
    pub radius: usize,
    pub generation: Option<usize>,
    pub windows: usize,
    pub values: Vec<u64>,
}

impl GrowthTable {
    /// `n<TAB>gamma` lines.
    pub fn to_tsv(&self) -> String {
        self.values.iter().enumerate().map(|(n, g)| format!("{n}\t{g}\n")).collect()
    }

    /// `γ(m + n) <= γ(m) γ(n)` on the computed range.
    pub fn is_submultiplicative(&self) -> bool {
        let v = &self.values;
        (0..v.len()).all(|m| (0..v.len() - m).all(|n| v[m + n] <= v[m] * v[n]))
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for GrowthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# growth {} radius={} windows={}", self.system, self.radius, self.windows)?;
        f.write_str(&self.to_tsv())
    }
}

pub fn growth_in(universe: &WindowUniverse, n_max: usize, exec: Exec, max_elements: usize) -> Result<GrowthTable> {
    let ball = enumerate_ball(universe, n_max, exec, max_elements)?;
    Ok(GrowthTable {
        system: universe.id().to_string(),
        radius: universe.radius(),
        generation: universe.generation(),
        windows: universe.len(),
        values: ball.gamma(),
    })
}

/// Growth up to `n_max` using one universe of radius `max(n_max, 1)`.
pub fn growth(system: &SubstitutionSystem, n_max: usize) -> Result<GrowthTable> {
    let universe = WindowUniverse::build(system, n_max.max(1))?;
    growth_in(&universe, n_max, Exec::default(), DEFAULT_MAX_ELEMENTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::{dihedral, grigorchuk};

    #[test]
    fn dihedral_is_linear() {
        let t = growth(&dihedral(), 10).unwrap();
        assert_eq!(t.values, (0..=10).map(|n| 2 * n + 1).collect::<Vec<u64>>());
        assert!(t.to_tsv().contains("5\t11\n"));
    }

    #[test]
    fn grigorchuk_small_balls() {
        let t = growth(&grigorchuk(), 4).unwrap();
        assert_eq!(t.values[..2], [1, 5]);
        assert!(t.is_submultiplicative());
        let seq = growth_in(&WindowUniverse::build(&grigorchuk(), 4).unwrap(), 4, Exec::Sequential, 1000).unwrap();
        assert_eq!(seq, t);
    }

    #[test]
    fn cap_reports_partial_table() {
        let u = WindowUniverse::build(&grigorchuk(), 6).unwrap();
        assert!(matches!(enumerate_ball(&u, 6, Exec::Sequential, 20), Err(Error::ResourceCap(_))));
    }
}
