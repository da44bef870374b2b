use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::{Alphabet, Sym};
use crate::automata::dfa::Dfa;

/// A nondeterministic automaton with epsilon moves, used as an
/// intermediate form by regex compilation and output-language construction.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    init: usize,
    finals: Vec<bool>,
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(Sym, usize)>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa { alphabet, init: 0, finals: Vec::new(), eps: Vec::new(), moves: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self) -> usize {
        self.finals.push(false);
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn set_init(&mut self, q: usize) {
        self.init = q;
    }

    pub fn set_final(&mut self, q: usize, accepting: bool) {
        self.finals[q] = accepting;
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub fn add_move(&mut self, from: usize, sym: Sym, to: usize) {
        self.moves[from].push((sym, to));
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }

    /// Subset construction. Subsets are named by their sorted member lists
    /// and numbered in discovery order, so the result is reproducible. The
    /// empty subset becomes the sink, keeping the DFA total.
    pub fn determinize(&self) -> Dfa {
        let n_sym = self.alphabet.len();
        let mut start = BTreeSet::new();
        start.insert(self.init);
        self.closure(&mut start);

        let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        let key: Vec<usize> = start.iter().copied().collect();
        ids.insert(key, 0);
        subsets.push(start);
        queue.push_back(0usize);
        let mut delta: Vec<usize> = Vec::new();

        while let Some(id) = queue.pop_front() {
            let mut row = vec![0usize; n_sym];
            for (a, slot) in row.iter_mut().enumerate() {
                let mut next = BTreeSet::new();
                for &q in &subsets[id] {
                    for &(s, r) in &self.moves[q] {
                        if s == a {
                            next.insert(r);
                        }
                    }
                }
                self.closure(&mut next);
                let key: Vec<usize> = next.iter().copied().collect();
                let target = match ids.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        ids.insert(key, t);
                        subsets.push(next);
                        queue.push_back(t);
                        t
                    }
                };
                *slot = target;
            }
            if delta.len() < (id + 1) * n_sym {
                delta.resize((id + 1) * n_sym, 0);
            }
            delta[id * n_sym..(id + 1) * n_sym].copy_from_slice(&row);
        }
        delta.resize(subsets.len() * n_sym, 0);
        let finals = subsets.iter().map(|s| s.iter().any(|&q| self.finals[q])).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta).expect("subset construction yields a total automaton")
    }
}
