//! Random automata, transducers and words for property tests and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, Sym};
use crate::automata::{Dfa, Ft, LookaheadFt};
use crate::driver::{DistanceBound, SynthesisSpec, TypeSpec};
use crate::oracle::{check_mean_aggregate, output_language};
use crate::symbolic::{IntervalPred, MintermMap};
use crate::Rational;

/// The first `n` lowercase letters.
pub fn letters(n: usize) -> Alphabet {
    assert!((1..=26).contains(&n), "between 1 and 26 letters");
    Alphabet::new((b'a'..b'a' + n as u8).map(char::from)).expect("distinct letters")
}

/// A total DFA with `n` states; each state is final with probability
/// `p_final`.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, n: usize, p_final: f64) -> Dfa {
    let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(p_final)).collect();
    let delta = (0..n * alphabet.len()).map(|_| rng.gen_range(0..n)).collect();
    Dfa::from_parts(alphabet.clone(), 0, finals, delta).expect("tables are total")
}

pub fn random_output<R: Rng + ?Sized>(rng: &mut R, n_sym: usize, l: usize) -> Vec<Sym> {
    let len = rng.gen_range(0..=l);
    (0..len).map(|_| rng.gen_range(0..n_sym)).collect()
}

/// A total transducer with `k` states and outputs of length at most `l`.
pub fn random_ft<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, k: usize, l: usize) -> Ft {
    let n_sym = alphabet.len();
    Ft::from_fn(alphabet.clone(), k, 0, |_, _| (rng.gen_range(0..k), random_output(rng, n_sym, l))).expect("total")
}

/// A transducer with a `k_r`-state lookahead automaton.
pub fn random_lookahead_ft<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    k: usize,
    k_r: usize,
    l: usize,
) -> LookaheadFt {
    let n_sym = alphabet.len();
    let r = random_dfa(rng, alphabet, k_r, 0.0);
    LookaheadFt::from_fn(r, k, 0, |_, _, _| (rng.gen_range(0..k), random_output(rng, n_sym, l))).expect("total")
}

/// A word of length in `0..=max_len` over `alphabet`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *alphabet.symbols().choose(rng).expect("non-empty")).collect()
}

/// A word accepted by `dfa`, found by a random walk restricted to live
/// states; `None` if no accepted word of length at most `max_len` is hit.
pub fn random_accepted_word<R: Rng + ?Sized>(rng: &mut R, dfa: &Dfa, max_len: usize) -> Option<Vec<Sym>> {
    let live = dfa.live_states();
    if !live[dfa.init()] {
        return None;
    }
    let target = rng.gen_range(0..=max_len);
    let mut q = dfa.init();
    let mut w = Vec::new();
    loop {
        if dfa.is_final(q) && w.len() >= target {
            return Some(w);
        }
        if w.len() == max_len {
            return dfa.is_final(q).then_some(w);
        }
        let moves: Vec<Sym> = (0..dfa.alphabet().len()).filter(|&a| live[dfa.step(q, a)]).collect();
        let a = *moves.choose(rng)?;
        w.push(a);
        q = dfa.step(q, a);
    }
}

/// A partition of `universe` into at most `parts` intervals, with the
/// default witnesses.
pub fn random_minterms<R: Rng + ?Sized>(rng: &mut R, universe: (u32, u32), parts: usize) -> MintermMap {
    let (lo, hi) = universe;
    let mut cuts: Vec<u32> = (0..parts.saturating_sub(1)).map(|_| rng.gen_range(lo + 1..=hi)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut bounds = vec![lo];
    bounds.extend(cuts);
    bounds.push(hi + 1);
    let preds: Vec<IntervalPred> =
        bounds.windows(2).map(|w| IntervalPred::range(w[0], w[1] - 1).expect("ordered cut points")).collect();
    let whole = IntervalPred::range(lo, hi).expect("ordered universe");
    crate::symbolic::compute_minterms(&preds, &whole).expect("valid partition")
}

/// A synthesis instance with a planted solution: the examples are outputs
/// of `hidden`, the output type is its image of the input type, and the
/// mean distance bound, when present, is one `hidden` meets.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub k: usize,
    pub l: usize,
    pub hidden: Ft,
    pub input_type: Dfa,
    pub output_type: Dfa,
    pub examples: Vec<(String, String)>,
    pub distance: Option<Rational>,
}

impl PlantedInstance {
    pub fn alphabet(&self) -> &Alphabet {
        self.hidden.alphabet()
    }

    pub fn spec(&self) -> SynthesisSpec {
        let mut spec = SynthesisSpec::new(self.alphabet().clone(), self.k, self.l)
            .types(TypeSpec::Dfa(self.input_type.clone()), TypeSpec::Dfa(self.output_type.clone()));
        spec.examples = self.examples.clone();
        if let Some(d) = self.distance {
            spec = spec.distance(DistanceBound::Mean(d));
        }
        spec
    }
}

/// Draws a planted instance with at most `max_k` states, `max_sym`
/// symbols, outputs of length at most `max_l`, up to three examples and an
/// input type of up to three states. Draws whose output type exceeds
/// `max_q` states are discarded.
pub fn planted_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_k: usize,
    max_sym: usize,
    max_l: usize,
    max_q: usize,
) -> PlantedInstance {
    loop {
        let (k, l) = (rng.gen_range(1..=max_k), rng.gen_range(1..=max_l));
        let sigma = letters(rng.gen_range(1..=max_sym));
        let hidden = random_ft(rng, &sigma, k, l);
        let p_size = rng.gen_range(1..=3);
        let input_type = random_dfa(rng, &sigma, p_size, 0.6);
        let output_type = output_language(&input_type, &hidden).expect("same alphabet").minimize();
        if output_type.num_states() > max_q {
            continue;
        }
        let examples = (0..3)
            .filter_map(|_| random_accepted_word(rng, &input_type, 6))
            .map(|w| {
                let s = sigma.decode(&w);
                let t = hidden.run_syms(&w);
                (s, sigma.decode(&t))
            })
            .collect();
        let d = [Rational::new(1, 2), Rational::from_integer(1), Rational::from_integer(l as i64)][rng.gen_range(0..3)];
        let distance = check_mean_aggregate(&input_type, &hidden, d).expect("positive bound").is_within().then_some(d);
        return PlantedInstance { k, l, hidden, input_type, output_type, examples, distance };
    }
}
