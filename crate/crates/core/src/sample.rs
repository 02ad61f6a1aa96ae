//! Seeded random substitutions for differential testing and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::substitution::Substitution;

const SYMBOLS: &[char] = &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// A substitution on `1..=max_alphabet` letters with images of length
/// `1..=max_image`. May fail to be a substitution in the growing sense.
pub fn random_substitution<R: Rng>(
    rng: &mut R,
    max_alphabet: usize,
    max_image: usize,
) -> Substitution {
    let n = rng.gen_range(1..=max_alphabet.clamp(1, SYMBOLS.len()));
    let rules: Vec<(char, String)> = SYMBOLS[..n]
        .iter()
        .map(|&c| {
            let len = rng.gen_range(1..=max_image.max(1));
            let img: String = (0..len).map(|_| SYMBOLS[rng.gen_range(0..n)]).collect();
            (c, img)
        })
        .collect();
    Substitution::from_rules(&rules).expect("generated rules are well formed")
}

/// `count` substitutions from a ChaCha stream seeded with `seed`.
pub fn random_sample(
    seed: u64,
    count: usize,
    max_alphabet: usize,
    max_image: usize,
) -> Vec<Substitution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_substitution(&mut rng, max_alphabet, max_image))
        .collect()
}
