use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::oracle::edit::edit_distance_syms;

/// A total deterministic finite state transducer over a single alphabet.
///
/// Every transition `(q, a)` has a target state and an output word; both
/// tables are row-major in `q * |Σ| + a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ft {
    alphabet: Alphabet,
    init: usize,
    next: Vec<usize>,
    out: Vec<Vec<Sym>>,
}

/// One transition of an [`Ft`], as yielded by [`Ft::transitions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition<'a> {
    pub from: usize,
    pub symbol: Sym,
    pub to: usize,
    pub output: &'a [Sym],
}

impl Ft {
    pub fn from_parts(alphabet: Alphabet, init: usize, next: Vec<usize>, out: Vec<Vec<Sym>>) -> Result<Self> {
        let n_sym = alphabet.len();
        if next.is_empty() || !next.len().is_multiple_of(n_sym) || out.len() != next.len() {
            return Err(Error::Construction("transducer tables are not total".into()));
        }
        let k = next.len() / n_sym;
        if init >= k {
            return Err(Error::Construction(format!("initial state {init} out of range")));
        }
        if let Some(t) = next.iter().find(|&&t| t >= k) {
            return Err(Error::Construction(format!("transition target {t} out of range")));
        }
        if let Some(&s) = out.iter().flatten().find(|&&s| s >= n_sym) {
            return Err(Error::SymbolIndex(s));
        }
        Ok(Ft { alphabet, init, next, out })
    }

    /// Builds a transducer from a closure mapping `(state, symbol)` to
    /// `(target, output)`.
    pub fn from_fn(
        alphabet: Alphabet,
        num_states: usize,
        init: usize,
        mut f: impl FnMut(usize, Sym) -> (usize, Vec<Sym>),
    ) -> Result<Self> {
        let mut next = Vec::with_capacity(num_states * alphabet.len());
        let mut out = Vec::with_capacity(num_states * alphabet.len());
        for q in 0..num_states {
            for a in 0..alphabet.len() {
                let (t, o) = f(q, a);
                next.push(t);
                out.push(o);
            }
        }
        Self::from_parts(alphabet, init, next, out)
    }

    /// Builds a transducer from `(from, input char, output string, to)`
    /// rows. Every `(state, symbol)` pair must be listed exactly once.
    pub fn from_transitions(
        alphabet: Alphabet,
        num_states: usize,
        init: usize,
        rows: &[(usize, char, &str, usize)],
    ) -> Result<Self> {
        let n_sym = alphabet.len();
        let mut next = vec![usize::MAX; num_states * n_sym];
        let mut out = vec![Vec::new(); num_states * n_sym];
        for &(q, c, o, t) in rows {
            let a = alphabet.index_of(c).ok_or(Error::ForeignSymbol(c))?;
            if q >= num_states {
                return Err(Error::Construction(format!("source state {q} out of range")));
            }
            let i = q * n_sym + a;
            if next[i] != usize::MAX {
                return Err(Error::Construction(format!("duplicate transition ({q}, {c:?})")));
            }
            next[i] = t;
            out[i] = alphabet.encode(o)?;
        }
        if let Some(i) = next.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Construction(format!(
                "missing transition ({}, {:?})",
                i / n_sym,
                alphabet.char_of(i % n_sym)
            )));
        }
        Self::from_parts(alphabet, init, next, out)
    }

    /// The one-state transducer copying its input.
    pub fn identity(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Ft { alphabet, init: 0, next: vec![0; n], out: (0..n).map(|a| vec![a]).collect() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.next.len() / self.alphabet.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn step(&self, q: usize, a: Sym) -> usize {
        self.next[q * self.alphabet.len() + a]
    }

    pub fn output(&self, q: usize, a: Sym) -> &[Sym] {
        &self.out[q * self.alphabet.len() + a]
    }

    pub fn max_output_len(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition<'_>> {
        let n_sym = self.alphabet.len();
        (0..self.next.len()).map(move |i| Transition {
            from: i / n_sym,
            symbol: i % n_sym,
            to: self.next[i],
            output: &self.out[i],
        })
    }

    /// Returns a copy with transition `(q, a)` replaced.
    pub fn with_transition(&self, q: usize, a: Sym, to: usize, output: Vec<Sym>) -> Result<Ft> {
        let mut next = self.next.clone();
        let mut out = self.out.clone();
        let i = q * self.alphabet.len() + a;
        next[i] = to;
        out[i] = output;
        Ft::from_parts(self.alphabet.clone(), self.init, next, out)
    }

    /// State reached and output produced from `q` on `w`.
    pub fn run_from(&self, q: usize, w: &[Sym]) -> (usize, Vec<Sym>) {
        let mut state = q;
        let mut output = Vec::new();
        for &a in w {
            output.extend_from_slice(self.output(state, a));
            state = self.step(state, a);
        }
        (state, output)
    }

    pub fn run_syms(&self, w: &[Sym]) -> Vec<Sym> {
        self.run_from(self.init, w).1
    }

    /// `T(w)`.
    pub fn run(&self, w: &str) -> Result<String> {
        let w = self.alphabet.encode(w)?;
        Ok(self.alphabet.decode(&self.run_syms(&w)))
    }

    /// The `(state, symbol)` transitions traversed on `w`, in order.
    pub fn trace(&self, w: &[Sym]) -> Vec<(usize, Sym)> {
        let mut state = self.init;
        w.iter()
            .map(|&a| {
                let t = (state, a);
                state = self.step(state, a);
                t
            })
            .collect()
    }

    /// Edit distance between the input symbol and the output of `(q, a)`.
    pub fn transition_cost(&self, q: usize, a: Sym) -> usize {
        edit_distance_syms(&[a], self.output(q, a))
    }

    /// Sum of per-transition edit distances along the run on `w`.
    pub fn aggregate_cost_syms(&self, w: &[Sym]) -> usize {
        self.trace(w).into_iter().map(|(q, a)| self.transition_cost(q, a)).sum()
    }

    /// Aggregate cost of the run on a non-empty `w`.
    pub fn aggregate_cost(&self, w: &str) -> Result<usize> {
        if w.is_empty() {
            return Err(Error::InvalidInput("aggregate cost of the empty word".into()));
        }
        Ok(self.aggregate_cost_syms(&self.alphabet.encode(w)?))
    }
}
