//! Equivalence of transducers on a regular input language.
//!
//! The search runs both machines in lockstep and keeps the output of the
//! machine that is ahead (the lag). Once outputs disagree on a position,
//! or the lag exceeds `l * |P x T1 x T2|`, every completion shorter than
//! the lag can no longer resynchronize, so the configuration is collapsed
//! into a "differs" state that only tracks `P`. The shortest word that the
//! resulting deterministic search accepts is the shortest distinguishing
//! input.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Sym;
use crate::automata::{Dfa, Ft};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Config {
    Synced { p: usize, q1: usize, q2: usize, first_ahead: bool, lag: Vec<Sym> },
    Differs { p: usize },
}

impl Config {
    fn p(&self) -> usize {
        match self {
            Config::Synced { p, .. } | Config::Differs { p } => *p,
        }
    }

    fn accepting(&self, pdfa: &Dfa) -> bool {
        match self {
            Config::Synced { p, lag, .. } => pdfa.is_final(*p) && !lag.is_empty(),
            Config::Differs { p } => pdfa.is_final(*p),
        }
    }
}

/// Shortest `w` in `L(P)` with `T1(w) != T2(w)`, ties broken by alphabet
/// order; `None` when the machines agree on all of `L(P)`.
pub fn find_distinguishing_input(t1: &Ft, t2: &Ft, p: &Dfa) -> Result<Option<String>> {
    if t1.alphabet() != t2.alphabet() || p.alphabet() != t1.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let l = t1.max_output_len().max(t2.max_output_len());
    let bound = l * p.num_states() * t1.num_states() * t2.num_states();
    let live = p.live_states();

    let step = |c: &Config, a: Sym| -> Config {
        match c {
            Config::Differs { p: ps } => Config::Differs { p: p.step(*ps, a) },
            Config::Synced { p: ps, q1, q2, first_ahead, lag } => {
                let np = p.step(*ps, a);
                let (o1, o2) = (t1.output(*q1, a), t2.output(*q2, a));
                // pending outputs of the leading and trailing machine
                let (mut lead, trail): (Vec<Sym>, &[Sym]) = if *first_ahead {
                    (lag.iter().chain(o1).copied().collect(), o2)
                } else {
                    (lag.iter().chain(o2).copied().collect(), o1)
                };
                let mut fa = *first_ahead;
                let common = lead.len().min(trail.len());
                if lead[..common] != trail[..common] {
                    return Config::Differs { p: np };
                }
                if trail.len() > lead.len() {
                    lead = trail[common..].to_vec();
                    fa = !fa;
                } else {
                    lead.drain(..common);
                }
                if lead.len() > bound {
                    return Config::Differs { p: np };
                }
                if lead.is_empty() {
                    fa = true;
                }
                Config::Synced { p: np, q1: t1.step(*q1, a), q2: t2.step(*q2, a), first_ahead: fa, lag: lead }
            }
        }
    };

    let start = Config::Synced { p: p.init(), q1: t1.init(), q2: t2.init(), first_ahead: true, lag: vec![] };
    let mut parent: HashMap<Config, Option<(Config, Sym)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        if c.accepting(p) {
            let mut w = Vec::new();
            let mut cur = c;
            while let Some(Some((prev, a))) = parent.get(&cur).cloned() {
                w.push(a);
                cur = prev;
            }
            w.reverse();
            return Ok(Some(p.alphabet().decode(&w)));
        }
        for a in 0..p.alphabet().len() {
            let n = step(&c, a);
            if !live[n.p()] || parent.contains_key(&n) {
                continue;
            }
            parent.insert(n.clone(), Some((c.clone(), a)));
            queue.push_back(n);
        }
    }
    Ok(None)
}
