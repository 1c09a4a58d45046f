use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm { images: images.into_iter().map(|i| i as u32).collect() })
    }

    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p >= degree || q >= degree {
                    return Err(Error::Precondition(format!("point out of range in {cycle:?}")));
                }
                images[p] = q;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn checked_then(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i as u32 != j)
    }

    /// Cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// 0 for even, 1 for odd.
    pub fn parity(&self) -> u8 {
        (self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2) as u8
    }

    /// Direct sum: `self` on the first points, `other` shifted after them.
    pub fn join(&self, other: &Perm) -> Perm {
        let shift = self.images.len() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + shift));
        Perm { images }
    }

    /// Restriction to `range`, if it is invariant.
    pub fn slice(&self, start: usize, len: usize) -> Option<Perm> {
        let mut images = Vec::with_capacity(len);
        for i in start..start + len {
            let j = self.apply(i);
            if j < start || j >= start + len {
                return None;
            }
            images.push((j - start) as u32);
        }
        Some(Perm { images })
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Perm> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` at `{rest}`")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        let mut all: Vec<usize> = cycles.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("cycles in `{text}` are not disjoint")));
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        let p = Perm::from_cycles(degree, &refs)?;
        Ok(p)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Perm::parse(5, "(0 1 2)(3 4)").unwrap(), p);
        assert_eq!(Perm::parse(3, "()").unwrap(), Perm::identity(3));
        assert!(Perm::parse(3, "(0 1)(1 2)").is_err());
        assert_eq!(p.parity(), 1);
        assert!(p.then(&p.inverse()).is_identity());
    }

    #[test]
    fn composition_order() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // a first: 0 -> 1 -> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(matches!(a.checked_then(&Perm::identity(4)), Err(Error::DegreeMismatch(3, 4))));
    }
}
