use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::symbolic::interval::IntervalPred;
use crate::symbolic::minterm::{compute_minterms, MintermMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfaTransition {
    pub from: usize,
    pub guard: IntervalPred,
    pub to: usize,
}

/// A deterministic, total symbolic automaton over a code-point universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sfa {
    universe: IntervalPred,
    init: usize,
    finals: Vec<bool>,
    transitions: Vec<SfaTransition>,
}

/// Checks that the guards leaving each state partition the universe.
pub(crate) fn check_guards<'a>(
    universe: &IntervalPred,
    num_states: usize,
    guards: impl Iterator<Item = (usize, &'a IntervalPred, usize)>,
) -> Result<()> {
    let mut covered = vec![IntervalPred::empty(); num_states];
    for (from, g, to) in guards {
        if from >= num_states || to >= num_states {
            return Err(Error::Construction(format!("transition {from} -> {to} out of range")));
        }
        if !g.is_subset_of(universe) {
            return Err(Error::Construction(format!("guard {g} leaves the universe")));
        }
        if !covered[from].and(g).is_empty() {
            return Err(Error::Construction(format!("state {from} is nondeterministic on {g}")));
        }
        covered[from] = covered[from].or(g);
    }
    if let Some(q) = covered.iter().position(|c| c != universe) {
        return Err(Error::Construction(format!("state {q} is not total")));
    }
    Ok(())
}

impl Sfa {
    pub fn new(
        universe: IntervalPred,
        init: usize,
        finals: Vec<bool>,
        transitions: Vec<SfaTransition>,
    ) -> Result<Self> {
        if init >= finals.len() {
            return Err(Error::Construction(format!("initial state {init} out of range")));
        }
        check_guards(&universe, finals.len(), transitions.iter().map(|t| (t.from, &t.guard, t.to)))?;
        Ok(Sfa { universe, init, finals, transitions })
    }

    /// Lifts a DFA whose symbols are literal characters; characters of the
    /// universe outside its alphabet lead to a fresh rejecting sink.
    pub fn from_dfa(dfa: &Dfa, universe: &IntervalPred) -> Result<Self> {
        let alpha = dfa.alphabet();
        let listed = IntervalPred::from_chars(alpha.symbols().iter().copied());
        if !listed.is_subset_of(universe) {
            return Err(Error::InvalidInput("DFA alphabet leaves the universe".into()));
        }
        let rest = universe.minus(&listed);
        let n = dfa.num_states();
        let sink = n;
        let mut finals: Vec<bool> = (0..n).map(|q| dfa.is_final(q)).collect();
        let mut transitions = Vec::new();
        for q in 0..n {
            let mut by_target: Vec<Vec<char>> = vec![Vec::new(); n];
            for (a, c) in alpha.iter() {
                by_target[dfa.step(q, a)].push(c);
            }
            for (to, chars) in by_target.into_iter().enumerate() {
                if !chars.is_empty() {
                    transitions.push(SfaTransition { from: q, guard: IntervalPred::from_chars(chars), to });
                }
            }
            if !rest.is_empty() {
                transitions.push(SfaTransition { from: q, guard: rest.clone(), to: sink });
            }
        }
        if !rest.is_empty() {
            finals.push(false);
            transitions.push(SfaTransition { from: sink, guard: universe.clone(), to: sink });
        }
        Sfa::new(universe.clone(), dfa.init(), finals, transitions)
    }

    /// Lifts a DFA over the witness alphabet of `mm`: symbol `i` becomes the
    /// guard of minterm `i`.
    pub fn from_finite(dfa: &Dfa, mm: &MintermMap) -> Result<Self> {
        if dfa.alphabet() != mm.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let mut transitions = Vec::new();
        for q in 0..dfa.num_states() {
            for to in 0..dfa.num_states() {
                let guard = (0..mm.len())
                    .filter(|&a| dfa.step(q, a) == to)
                    .fold(IntervalPred::empty(), |g, a| g.or(mm.predicate(a)));
                if !guard.is_empty() {
                    transitions.push(SfaTransition { from: q, guard, to });
                }
            }
        }
        let finals = (0..dfa.num_states()).map(|q| dfa.is_final(q)).collect();
        Sfa::new(mm.universe().clone(), dfa.init(), finals, transitions)
    }

    pub fn universe(&self) -> &IntervalPred {
        &self.universe
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

    pub fn transitions(&self) -> &[SfaTransition] {
        &self.transitions
    }

    pub fn predicates(&self) -> Vec<IntervalPred> {
        self.transitions.iter().map(|t| t.guard.clone()).collect()
    }

    pub fn step(&self, q: usize, c: char) -> Option<usize> {
        self.transitions.iter().find(|t| t.from == q && t.guard.contains_char(c)).map(|t| t.to)
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        let mut q = self.init;
        for c in w.chars() {
            q = self.step(q, c).ok_or(Error::ForeignSymbol(c))?;
        }
        Ok(self.finals[q])
    }
}

/// Finitizes `m` over the minterms of its own predicates.
pub fn finitize_sfa(m: &Sfa) -> Result<(Dfa, MintermMap)> {
    let mm = compute_minterms(&m.predicates(), m.universe())?;
    let dfa = finitize_sfa_with(m, &mm)?;
    Ok((dfa, mm))
}

/// Finitizes `m` over a given partition, which must refine every guard.
pub fn finitize_sfa_with(m: &Sfa, mm: &MintermMap) -> Result<Dfa> {
    if mm.universe() != m.universe() {
        return Err(Error::InvalidInput("minterm universe differs from the automaton's".into()));
    }
    if let Some(t) = m.transitions.iter().find(|t| !mm.refines(&t.guard)) {
        return Err(Error::InvalidInput(format!("minterms do not refine guard {}", t.guard)));
    }
    let finals: Vec<usize> = (0..m.num_states()).filter(|&q| m.finals[q]).collect();
    Dfa::from_fn(mm.alphabet().clone(), m.num_states(), m.init, &finals, |q, a| {
        m.step(q, mm.witness(a)).expect("total automaton")
    })
}
