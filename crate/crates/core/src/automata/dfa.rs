use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};

/// A total deterministic finite automaton.
///
/// States are `0..num_states()`, transitions are stored row-major as
/// `delta[state * |Σ| + symbol]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    init: usize,
    finals: Vec<bool>,
    delta: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Complement,
    Intersect,
    Union,
    Difference,
}

impl Dfa {
    pub fn from_parts(alphabet: Alphabet, init: usize, finals: Vec<bool>, delta: Vec<usize>) -> Result<Self> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::Construction("a DFA needs at least one state".into()));
        }
        if init >= n {
            return Err(Error::Construction(format!("initial state {init} out of range")));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::Construction("transition table is not total".into()));
        }
        if let Some(bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::Construction(format!("transition target {bad} out of range")));
        }
        Ok(Dfa { alphabet, init, finals, delta })
    }

    /// Builds a DFA from a transition function given as a closure.
    pub fn from_fn(
        alphabet: Alphabet,
        num_states: usize,
        init: usize,
        finals: &[usize],
        mut step: impl FnMut(usize, Sym) -> usize,
    ) -> Result<Self> {
        let mut fin = vec![false; num_states];
        for &f in finals {
            if f >= num_states {
                return Err(Error::Construction(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        let mut delta = Vec::with_capacity(num_states * alphabet.len());
        for q in 0..num_states {
            for a in 0..alphabet.len() {
                delta.push(step(q, a));
            }
        }
        Self::from_parts(alphabet, init, fin, delta)
    }

    /// The one-state automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dfa { alphabet, init: 0, finals: vec![true], delta: vec![0; n] }
    }

    /// The one-state automaton accepting nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dfa { alphabet, init: 0, finals: vec![false], delta: vec![0; n] }
    }

    /// Accepts exactly the listed words.
    pub fn from_words(alphabet: Alphabet, words: &[Vec<Sym>]) -> Self {
        let mut nfa = crate::automata::nfa::Nfa::new(alphabet);
        let root = nfa.add_state();
        nfa.set_init(root);
        for w in words {
            let mut cur = root;
            for &s in w {
                let nxt = nfa.add_state();
                nfa.add_move(cur, s, nxt);
                cur = nxt;
            }
            nfa.set_final(cur, true);
        }
        nfa.determinize().minimize()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    pub fn step(&self, q: usize, a: Sym) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run_from(&self, q: usize, w: &[Sym]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts_syms(&self, w: &[Sym]) -> bool {
        self.finals[self.run_from(self.init, w)]
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        Ok(self.accepts_syms(&self.alphabet.encode(w)?))
    }

    /// States from which some final state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                rev[self.step(q, a)].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    fn check_same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            init: self.init,
            finals: self.finals.iter().map(|f| !f).collect(),
            delta: self.delta.clone(),
        }
    }

    /// Reachable part of the synchronous product, with acceptance given by
    /// `accept(left_final, right_final)`.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.check_same_alphabet(other)?;
        let n_sym = self.alphabet.len();
        let width = other.num_states();
        let mut ids = vec![usize::MAX; self.num_states() * width];
        let mut pairs = vec![(self.init, other.init)];
        ids[self.init * width + other.init] = 0;
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..n_sym {
                let (p2, q2) = (self.step(p, a), other.step(q, a));
                let slot = &mut ids[p2 * width + q2];
                if *slot == usize::MAX {
                    *slot = pairs.len();
                    pairs.push((p2, q2));
                }
                delta.push(*slot);
            }
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| accept(self.finals[p], other.finals[q])).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    /// Boolean algebra over DFAs. `other` is required for every operation
    /// except [`BoolOp::Complement`]. Results are minimized.
    pub fn boolean(&self, op: BoolOp, other: Option<&Dfa>) -> Result<Dfa> {
        let need = || other.ok_or_else(|| Error::InvalidInput(format!("{op:?} needs two operands")));
        let out = match op {
            BoolOp::Complement => self.complement(),
            BoolOp::Intersect => self.product(need()?, |a, b| a && b)?,
            BoolOp::Union => self.product(need()?, |a, b| a || b)?,
            BoolOp::Difference => self.product(need()?, |a, b| a && !b)?,
        };
        Ok(out.minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Intersect, Some(other))
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Union, Some(other))
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(BoolOp::Difference, Some(other))
    }

    /// Shortest accepted word, ties broken by alphabet order; `None` iff the
    /// language is empty.
    pub fn shortest_word(&self) -> Option<Vec<Sym>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, Sym)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.init]);
        seen[self.init] = true;
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for a in 0..self.alphabet.len() {
                let r = self.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Shortest word as a string.
    pub fn witness(&self) -> Option<String> {
        self.shortest_word().map(|w| self.alphabet.decode(&w))
    }

    /// Language equivalence, decided on the product.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |a, b| a != b)?.is_empty())
    }

    /// Hopcroft partition refinement on the reachable part, followed by a
    /// canonical BFS renumbering (alphabet order). Two minimized DFAs for
    /// the same language are structurally equal.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable_subautomaton();
        let blocks = reach.hopcroft_blocks();
        reach.quotient(&blocks)
    }

    fn reachable_subautomaton(&self) -> Dfa {
        let n_sym = self.alphabet.len();
        let mut ids = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.init];
        ids[self.init] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..n_sym {
                let r = self.step(q, a);
                if ids[r] == usize::MAX {
                    ids[r] = order.len();
                    order.push(r);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * n_sym);
        for &q in &order {
            for a in 0..n_sym {
                delta.push(ids[self.step(q, a)]);
            }
        }
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa { alphabet: self.alphabet.clone(), init: 0, finals, delta }
    }

    fn hopcroft_blocks(&self) -> Vec<usize> {
        let n = self.num_states();
        let n_sym = self.alphabet.len();
        let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n_sym];
        for q in 0..n {
            for (a, inv) in inverse.iter_mut().enumerate() {
                inv[self.step(q, a)].push(q);
            }
        }

        let finals: Vec<usize> = (0..n).filter(|&q| self.finals[q]).collect();
        let others: Vec<usize> = (0..n).filter(|&q| !self.finals[q]).collect();
        let mut partition: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0usize; n];
        for group in [finals, others] {
            if !group.is_empty() {
                for &q in &group {
                    block_of[q] = partition.len();
                }
                partition.push(group);
            }
        }
        let mut worklist: Vec<usize> = (0..partition.len()).collect();

        while let Some(splitter) = worklist.pop() {
            let splitter_states = partition[splitter].clone();
            for inv in &inverse {
                let mut pre = vec![false; n];
                let mut touched: Vec<usize> = Vec::new();
                for &q in &splitter_states {
                    for &p in &inv[q] {
                        if !pre[p] {
                            pre[p] = true;
                            if !touched.contains(&block_of[p]) {
                                touched.push(block_of[p]);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                for b in touched {
                    let (inside, outside): (Vec<usize>, Vec<usize>) = partition[b].iter().partition(|&&q| pre[q]);
                    if inside.is_empty() || outside.is_empty() {
                        continue;
                    }
                    let new_id = partition.len();
                    let (keep, moved) =
                        if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
                    for &q in &moved {
                        block_of[q] = new_id;
                    }
                    partition[b] = keep;
                    partition.push(moved);
                    // b keeps its worklist status; the smaller half is
                    // always a sufficient new splitter
                    worklist.push(new_id);
                }
            }
        }
        block_of
    }

    fn quotient(&self, block_of: &[usize]) -> Dfa {
        let n_sym = self.alphabet.len();
        let n_blocks = block_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; n_blocks];
        for (q, &b) in block_of.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = q;
            }
        }
        // canonical numbering: BFS from the initial block in alphabet order
        let mut ids = vec![usize::MAX; n_blocks];
        let mut order = vec![block_of[self.init]];
        ids[block_of[self.init]] = 0;
        let mut i = 0;
        while i < order.len() {
            let b = order[i];
            for a in 0..n_sym {
                let t = block_of[self.step(rep[b], a)];
                if ids[t] == usize::MAX {
                    ids[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * n_sym);
        for &b in &order {
            for a in 0..n_sym {
                delta.push(ids[block_of[self.step(rep[b], a)]]);
            }
        }
        let finals = order.iter().map(|&b| self.finals[rep[b]]).collect();
        Dfa { alphabet: self.alphabet.clone(), init: 0, finals, delta }
    }
}
