use crate::alphabet::{Alphabet, Sym};
use crate::automata::dfa::Dfa;
use crate::automata::ft::Ft;
use crate::error::{Error, Result};

/// A transducer with regular lookahead: a pair `(T, R)` where `T` reads
/// `(lookahead state, symbol)` pairs and `R` is a total DFA run over the
/// reversed suffix following each position.
///
/// Tables are indexed by `(q * |Q_R| + r) * |Σ| + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookaheadFt {
    alphabet: Alphabet,
    lookahead: Dfa,
    init: usize,
    next: Vec<usize>,
    out: Vec<Vec<Sym>>,
}

impl LookaheadFt {
    pub fn from_parts(lookahead: Dfa, init: usize, next: Vec<usize>, out: Vec<Vec<Sym>>) -> Result<Self> {
        let alphabet = lookahead.alphabet().clone();
        let width = lookahead.num_states() * alphabet.len();
        if next.is_empty() || !next.len().is_multiple_of(width) || out.len() != next.len() {
            return Err(Error::Construction("lookahead transducer input alphabet must be exactly Q_R x Σ".into()));
        }
        let k = next.len() / width;
        if init >= k || next.iter().any(|&t| t >= k) {
            return Err(Error::Construction("transducer state out of range".into()));
        }
        if let Some(&s) = out.iter().flatten().find(|&&s| s >= alphabet.len()) {
            return Err(Error::SymbolIndex(s));
        }
        Ok(LookaheadFt { alphabet, lookahead, init, next, out })
    }

    /// Builds from a closure over `(state, lookahead state, symbol)`.
    pub fn from_fn(
        lookahead: Dfa,
        num_states: usize,
        init: usize,
        mut f: impl FnMut(usize, usize, Sym) -> (usize, Vec<Sym>),
    ) -> Result<Self> {
        let mut next = Vec::new();
        let mut out = Vec::new();
        for q in 0..num_states {
            for r in 0..lookahead.num_states() {
                for a in 0..lookahead.alphabet().len() {
                    let (t, o) = f(q, r, a);
                    next.push(t);
                    out.push(o);
                }
            }
        }
        Self::from_parts(lookahead, init, next, out)
    }

    /// Embeds a plain transducer with a single-state lookahead automaton.
    pub fn from_ft(t: &Ft) -> Self {
        let r = Dfa::universal(t.alphabet().clone());
        Self::from_fn(r, t.num_states(), t.init(), |q, _, a| (t.step(q, a), t.output(q, a).to_vec()))
            .expect("a plain transducer embeds totally")
    }

    /// Drops the lookahead when it carries no information.
    pub fn to_ft(&self) -> Option<Ft> {
        if self.lookahead.num_states() != 1 {
            return None;
        }
        Ft::from_parts(self.alphabet.clone(), self.init, self.next.clone(), self.out.clone()).ok()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn lookahead(&self) -> &Dfa {
        &self.lookahead
    }

    pub fn num_states(&self) -> usize {
        self.next.len() / (self.lookahead.num_states() * self.alphabet.len())
    }

    pub fn init(&self) -> usize {
        self.init
    }

    fn index(&self, q: usize, r: usize, a: Sym) -> usize {
        (q * self.lookahead.num_states() + r) * self.alphabet.len() + a
    }

    pub fn step(&self, q: usize, r: usize, a: Sym) -> usize {
        self.next[self.index(q, r, a)]
    }

    pub fn output(&self, q: usize, r: usize, a: Sym) -> &[Sym] {
        &self.out[self.index(q, r, a)]
    }

    pub fn transition_cost(&self, q: usize, r: usize, a: Sym) -> usize {
        crate::oracle::edit::edit_distance_syms(&[a], self.output(q, r, a))
    }

    /// `look(i)`: the state `R` reaches on the reversed suffix after
    /// position `i`.
    pub fn lookahead_states(&self, w: &[Sym]) -> Vec<usize> {
        let mut look = vec![0; w.len()];
        let mut r = self.lookahead.init();
        for i in (0..w.len()).rev() {
            look[i] = r;
            r = self.lookahead.step(r, w[i]);
        }
        look
    }

    /// The `(state, lookahead state, symbol)` transitions traversed on `w`.
    pub fn trace(&self, w: &[Sym]) -> Vec<(usize, usize, Sym)> {
        let look = self.lookahead_states(w);
        let mut q = self.init;
        w.iter()
            .zip(look)
            .map(|(&a, r)| {
                let t = (q, r, a);
                q = self.step(q, r, a);
                t
            })
            .collect()
    }

    pub fn run_syms(&self, w: &[Sym]) -> Vec<Sym> {
        self.trace(w).into_iter().flat_map(|(q, r, a)| self.output(q, r, a).to_vec()).collect()
    }

    pub fn run(&self, w: &str) -> Result<String> {
        let w = self.alphabet.encode(w)?;
        Ok(self.alphabet.decode(&self.run_syms(&w)))
    }

    pub fn aggregate_cost_syms(&self, w: &[Sym]) -> usize {
        self.trace(w).into_iter().map(|(q, r, a)| self.transition_cost(q, r, a)).sum()
    }

    pub fn max_output_len(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookahead_sees_the_reversed_suffix() {
        let sigma = Alphabet::from_str_chars("ab").unwrap();
        // R remembers the last symbol it read, i.e. the first symbol of the suffix
        let r = Dfa::from_fn(sigma.clone(), 3, 0, &[], |_, a| a + 1).unwrap();
        // output the next symbol instead of the current one; nothing at the end
        let t = LookaheadFt::from_fn(r, 1, 0, |_, r, _| (0, if r == 0 { vec![] } else { vec![r - 1] })).unwrap();
        assert_eq!(t.lookahead_states(&[0, 1, 1]), vec![2, 2, 0]);
        assert_eq!(t.run("abb").unwrap(), "bb");
        assert_eq!(t.run("").unwrap(), "");
    }

    #[test]
    fn single_state_lookahead_round_trips_to_plain() {
        let sigma = Alphabet::from_str_chars("ab").unwrap();
        let plain = Ft::identity(sigma);
        let la = LookaheadFt::from_ft(&plain);
        assert_eq!(la.to_ft().unwrap(), plain);
        assert_eq!(la.run("abba").unwrap(), "abba");
    }
}
