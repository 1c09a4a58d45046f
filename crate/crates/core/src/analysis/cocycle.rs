//! The cocycle `τ` of a Ξ cover and the homomorphism `φ` it induces.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CoverGroup, XiGraph, XiVertex};
use crate::group::GroupWord;
use crate::symbolic::SubstitutionSystem;

/// Positions past the summation window that must carry a trivial cocycle.
pub const FRINGE: usize = 8;

/// `τ_w` on the first vertices of `J_∞` and its product `φ(w)`.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleEvaluation {
    pub system: String,
    pub word: String,
    /// Generation of the `J_N` the cover was built from.
    pub generation: usize,
    /// Vertices `0..=window` were summed.
    pub window: usize,
    /// Vertices with nontrivial `τ_w`, with its value.
    pub support: Vec<(usize, String)>,
    pub phi: String,
    #[serde(skip)]
    pub phi_element: u8,
    /// `τ_w` vanished on the fringe just past the window.
    pub fringe_clean: bool,
}

impl fmt::Display for CocycleEvaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ({}) = {} on {}", self.word, self.phi, self.system)?;
        if !self.support.is_empty() {
            let s: Vec<String> = self.support.iter().map(|(p, h)| format!("{p}:{h}")).collect();
            write!(f, "  τ support {}", s.join(" "))?;
        }
        if !self.fringe_clean {
            write!(f, "  (fringe not clean)")?;
        }
        Ok(())
    }
}

/// Builds a cover large enough to evaluate words up to `max_len` letters.
pub fn cover_for(system: &SubstitutionSystem, max_len: usize) -> Result<XiGraph> {
    CoverGroup::for_system(system)?;
    let needed = 2 * max_len + 2 * FRINGE + 8 + 1;
    for n in 2..40 {
        if system.segment(n, "J")?.len() >= needed {
            return XiGraph::build(system, n);
        }
    }
    Err(Error::ResourceCap(format!("no J_N of length {needed} below generation 40")))
}

/// Copy reached from `(v, 1)` under `word`, for each vertex `v ≤ limit`.
fn tau_values(xi: &XiGraph, word: &GroupWord, limit: usize) -> Result<Vec<u8>> {
    (0..=limit)
        .map(|pos| xi.act_word(word.letters(), XiVertex { copy: 0, pos }).map(|v| v.copy))
        .collect()
}

pub fn tau_on(xi: &XiGraph, word: &GroupWord) -> Result<CocycleEvaluation> {
    let window = word.len() + 8;
    if window + FRINGE + word.len() >= xi.end() {
        return Err(Error::WordTooLong { len: word.len(), radius: xi.end() });
    }
    let values = tau_values(xi, word, window + FRINGE)?;
    let cover = xi.cover();
    let phi = values[..=window].iter().fold(0u8, |acc, &h| acc ^ h);
    Ok(CocycleEvaluation {
        system: xi.system_id().to_string(),
        word: word.to_text(xi.alphabet()),
        generation: xi.generation(),
        window,
        support: values[..=window]
            .iter()
            .enumerate()
            .filter(|(_, &h)| h != 0)
            .map(|(p, &h)| (p, cover.name(h)))
            .collect(),
        phi: cover.name(phi),
        phi_element: phi,
        fringe_clean: values[window + 1..].iter().all(|&h| h == 0),
    })
}

pub fn tau(system: &SubstitutionSystem, word: &GroupWord) -> Result<CocycleEvaluation> {
    tau_on(&cover_for(system, word.len())?, word)
}

pub fn phi(system: &SubstitutionSystem, word: &GroupWord) -> Result<String> {
    Ok(tau(system, word)?.phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub system: String,
    pub generator_images: Vec<(String, String)>,
    /// Order of the subgroup generated by the generator images.
    pub image_order: usize,
    pub cover_order: usize,
    pub pairs_checked: usize,
    pub homomorphism_failures: Vec<String>,
    pub samples: Vec<CocycleEvaluation>,
    pub pass: bool,
}

impl fmt::Display for PhiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "φ on {}", self.system)?;
        for (g, h) in &self.generator_images {
            writeln!(f, "  φ({g}) = {h}")?;
        }
        writeln!(f, "  image order {} of {}", self.image_order, self.cover_order)?;
        writeln!(
            f,
            "  homomorphism on {} random pairs: {} failures",
            self.pairs_checked,
            self.homomorphism_failures.len()
        )?;
        for s in &self.samples {
            writeln!(f, "  {s}")?;
        }
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

fn span_order(elements: impl IntoIterator<Item = u8>) -> usize {
    let mut span = vec![0u8];
    for e in elements {
        if !span.contains(&e) {
            let shifted: Vec<u8> = span.iter().map(|&s| s ^ e).collect();
            span.extend(shifted);
        }
    }
    span.len()
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_len);
    GroupWord::new((0..len).map(|_| rng.gen_range(0..letters) as u8).collect())
}

/// Generator images, surjectivity onto the cover group, and `φ(uv) = φ(u)φ(v)`
/// on `pairs` seeded random pairs of words with up to six letters.
pub fn phi_report(system: &SubstitutionSystem, pairs: usize, seed: u64, samples: &[GroupWord]) -> Result<PhiReport> {
    let max_sample = samples.iter().map(GroupWord::len).max().unwrap_or(0);
    let xi = cover_for(system, max_sample.max(12))?;
    let alphabet = system.alphabet();
    let mut images = Vec::new();
    let mut elements = Vec::new();
    for s in alphabet.symbols() {
        let e = tau_on(&xi, &GroupWord::letter(s))?;
        elements.push(e.phi_element);
        images.push((alphabet.name(s).to_string(), e.phi));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let u = random_word(&mut rng, alphabet.len(), 6);
        let v = random_word(&mut rng, alphabet.len(), 6);
        let pu = tau_on(&xi, &u)?.phi_element;
        let pv = tau_on(&xi, &v)?.phi_element;
        let puv = tau_on(&xi, &u.mul(&v))?.phi_element;
        if puv != pu ^ pv {
            failures.push(format!("{} · {}", u.to_text(alphabet), v.to_text(alphabet)));
        }
    }
    let samples: Vec<CocycleEvaluation> = samples.iter().map(|w| tau_on(&xi, w)).collect::<Result<_>>()?;
    let image_order = span_order(elements);
    let cover_order = xi.cover().order();
    let pass = failures.is_empty() && image_order == cover_order && samples.iter().all(|s| s.fringe_clean);
    Ok(PhiReport {
        system: system.id().to_string(),
        generator_images: images,
        image_order,
        cover_order,
        pairs_checked: pairs,
        homomorphism_failures: failures,
        samples,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::commutator;
    use crate::symbolic::builtin::{galpha, ghat};
    use crate::symbolic::AlphaSequence;

    fn w(s: &SubstitutionSystem, t: &str) -> GroupWord {
        GroupWord::parse(s.alphabet(), t).unwrap()
    }

    #[test]
    fn ghat_generators() {
        let g = ghat();
        for (t, want) in [("b", "b"), ("c", "c"), ("d", "d"), ("a0", "1"), ("a1", "1"), ("a2", "1"), ("bc", "d")] {
            assert_eq!(phi(&g, &w(&g, t)).unwrap(), want, "{t}");
        }
    }

    #[test]
    fn commutator_support() {
        let g = ghat();
        let k = commutator(&w(&g, "a2"), &w(&g, "b"));
        let e = tau(&g, &k).unwrap();
        assert_eq!(e.support.len(), 2, "{e}");
        assert!(e.support.iter().all(|(_, h)| h == "b"));
        assert_eq!(e.phi, "1");
        assert!(e.fringe_clean);
    }

    #[test]
    fn reports() {
        let g = ghat();
        let r = phi_report(&g, 200, 7, &[]).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.image_order, 4);
        let a = galpha(&AlphaSequence::all_sigma()).unwrap();
        let r = phi_report(&a, 50, 7, &[]).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.image_order, 16);
    }
}
