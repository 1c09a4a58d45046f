use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alphabet::{Alphabet, Symbol};
use super::segment::{LabelSet, Segment};
use crate::error::{Error, Result};

/// Random walk on three symbols: each step picks one of the two symbols that
/// differ from its predecessor with probability 1/2. Seeded and deterministic.
pub fn random_markov_segment(alphabet: &Alphabet, length: usize, seed: u64) -> Result<Segment> {
    if alphabet.len() != 3 {
        return Err(Error::Precondition(format!(
            "markov segments need a 3-symbol alphabet, got {}",
            alphabet.len()
        )));
    }
    if length == 0 {
        return Err(Error::Precondition("length must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prev: Symbol = rng.gen_range(0..3);
    let mut sets = Vec::with_capacity(length);
    sets.push(LabelSet::singleton(prev));
    for _ in 1..length {
        let step: Symbol = rng.gen_range(1..3);
        prev = (prev + step) % 3;
        sets.push(LabelSet::singleton(prev));
    }
    Ok(Segment::from_sets_unchecked(sets))
}
