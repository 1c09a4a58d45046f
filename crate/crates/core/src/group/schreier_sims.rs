//! Deterministic Schreier–Sims.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::perm::Perm;
use crate::error::{Error, Result};

struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        Level { base_point, gens: Vec::new(), transversal: vec![None; degree], orbit: Vec::new() }
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Perm::identity(degree));
        self.orbit = vec![self.base_point];
        let mut k = 0;
        while k < self.orbit.len() {
            let delta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.apply(delta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[delta].as_ref().expect("orbit point").then(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set of a permutation group.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let b = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                let fixes_prefix =
                    chain.levels[..l].iter().all(|lv| g.apply(lv.base_point) == lv.base_point);
                if fixes_prefix {
                    chain.levels[l].gens.push(g.clone());
                }
            }
        }
        for level in &mut chain.levels {
            level.rebuild(degree);
        }
        chain.complete();
        Ok(chain)
    }

    /// Sifts `h` through the levels from `start`; returns the residue and the
    /// level where sifting stopped (`levels.len()` if it went through).
    fn strip(&self, mut h: Perm, start: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let degree = self.degree;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            let mut restart = None;
            'scan: for k in 0..self.levels[level].orbit.len() {
                let b = self.levels[level].orbit[k];
                for g in 0..self.levels[level].gens.len() {
                    let lv = &self.levels[level];
                    let s = &lv.gens[g];
                    let ub = lv.transversal[b].as_ref().expect("orbit point");
                    let ubs = lv.transversal[s.apply(b)].as_ref().expect("orbit is closed");
                    let h = ub.then(s).then(&ubs.inverse());
                    let (y, j) = self.strip(h, level + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let p = y.first_moved().expect("non-identity residue");
                            self.levels.push(Level::new(p, degree));
                        }
                        for l in level + 1..=j {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild(degree);
                        }
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            i = match restart {
                Some(j) => j as isize,
                None => i - 1,
            };
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && {
            let (y, j) = self.strip(g.clone(), 0);
            j == self.levels.len() && y.is_identity()
        }
    }
}

/// Exact order of the group generated by `perms` (all of one degree).
pub fn group_order(perms: &[Perm]) -> Result<BigUint> {
    let degree = perms.first().map_or(0, Perm::degree);
    Ok(StabilizerChain::new(degree, perms)?.order())
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Classification {
    Trivial,
    Alternating,
    Symmetric,
    Other {
        #[serde(serialize_with = "big_as_string")]
        order: BigUint,
    },
}

fn big_as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Trivial => f.write_str("trivial"),
            Classification::Alternating => f.write_str("alternating"),
            Classification::Symmetric => f.write_str("symmetric"),
            Classification::Other { order } => write!(f, "other(order {order})"),
        }
    }
}

/// Compares the generated order with `degree!` and `degree!/2`.
pub fn classify_on_support(perms: &[Perm], degree: usize) -> Result<Classification> {
    if degree == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let order = StabilizerChain::new(degree, perms)?.order();
    let full = factorial(degree);
    Ok(if order == BigUint::from(1u32) {
        Classification::Trivial
    } else if order == full {
        Classification::Symmetric
    } else if order.clone() * 2u32 == full {
        Classification::Alternating
    } else {
        Classification::Other { order }
    })
}
