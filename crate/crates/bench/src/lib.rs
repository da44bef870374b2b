//! Shared inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use transynth::random::{letters, random_dfa, random_ft, random_word};
use transynth::{Dfa, Ft};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random transducer with `k` states over `n_sym` letters and outputs of
/// length at most two, with a random input type of `p_states` states.
pub fn random_pair(seed: u64, k: usize, n_sym: usize, p_states: usize) -> (Ft, Dfa) {
    let mut rng = rng(seed);
    let sigma = letters(n_sym);
    let t = random_ft(&mut rng, &sigma, k, 2);
    let p = random_dfa(&mut rng, &sigma, p_states, 0.5);
    (t, p)
}

/// Examples `(w, t(w))` for `n` random words of length at most `len`.
pub fn examples_of(t: &Ft, seed: u64, n: usize, len: usize) -> Vec<(String, String)> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let w = random_word(&mut rng, t.alphabet(), len);
            let o = t.run(&w).expect("same alphabet");
            (w, o)
        })
        .collect()
}
