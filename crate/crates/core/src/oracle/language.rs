//! Languages derived from a transducer: its image and its bad inputs.

use std::collections::HashMap;

use crate::automata::{Dfa, Ft, LookaheadFt, Nfa};
use crate::error::{Error, Result};

fn same_alphabet(a: &Dfa, t: &crate::alphabet::Alphabet) -> Result<()> {
    if a.alphabet() != t {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// Reachable part of `P x T x Q`, with `Q` advanced through each output
/// string. Accepting states are `P`-final and `Q`-nonfinal.
pub(crate) fn violation_product(p: &Dfa, t: &Ft, q: &Dfa) -> Result<Dfa> {
    same_alphabet(p, t.alphabet())?;
    same_alphabet(q, t.alphabet())?;
    let n_sym = t.alphabet().len();
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut states = vec![(p.init(), t.init(), q.init())];
    ids.insert(states[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (ps, ts, qs) = states[i];
        for a in 0..n_sym {
            let key = (p.step(ps, a), t.step(ts, a), q.run_from(qs, t.output(ts, a)));
            let id = *ids.entry(key).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let finals = states.iter().map(|&(ps, _, qs)| p.is_final(ps) && !q.is_final(qs)).collect();
    Dfa::from_parts(t.alphabet().clone(), 0, finals, delta)
}

/// `{ w in L(P) | T(w) not in L(Q) }`, minimized.
pub fn bad_inputs(p: &Dfa, t: &Ft, q: &Dfa) -> Result<Dfa> {
    Ok(violation_product(p, t, q)?.minimize())
}

/// Inputs violating the triple for a transducer with lookahead. The product
/// guesses the lookahead state of the remaining suffix and checks the guess
/// at the end of the word.
pub fn bad_inputs_lookahead(p: &Dfa, t: &LookaheadFt, q: &Dfa) -> Result<Dfa> {
    same_alphabet(p, t.alphabet())?;
    same_alphabet(q, t.alphabet())?;
    let r = t.lookahead();
    let mut nfa = Nfa::new(t.alphabet().clone());
    let start = nfa.add_state();
    nfa.set_init(start);
    let mut ids: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut states: Vec<((usize, usize, usize, usize), usize)> = Vec::new();
    let mut intern = |nfa: &mut Nfa, key, states: &mut Vec<_>| {
        *ids.entry(key).or_insert_with(|| {
            let id = nfa.add_state();
            states.push((key, id));
            id
        })
    };
    for rho in 0..r.num_states() {
        let s = intern(&mut nfa, (p.init(), t.init(), q.init(), rho), &mut states);
        nfa.add_eps(start, s);
    }
    let mut i = 0;
    while i < states.len() {
        let ((ps, ts, qs, rho), from) = states[i];
        if p.is_final(ps) && !q.is_final(qs) && rho == r.init() {
            nfa.set_final(from, true);
        }
        for a in 0..t.alphabet().len() {
            for rn in (0..r.num_states()).filter(|&x| r.step(x, a) == rho) {
                let to_key = (p.step(ps, a), t.step(ts, rn, a), q.run_from(qs, t.output(ts, rn, a)), rn);
                let to = intern(&mut nfa, to_key, &mut states);
                nfa.add_move(from, a, to);
            }
        }
        i += 1;
    }
    Ok(nfa.determinize().minimize())
}

/// `{ T(w) | w in L(P) }`. Multi-symbol outputs are spelled out through
/// fresh intermediate states; empty outputs become epsilon moves.
pub fn output_language(p: &Dfa, t: &Ft) -> Result<Dfa> {
    same_alphabet(p, t.alphabet())?;
    let mut nfa = Nfa::new(t.alphabet().clone());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let init = nfa.add_state();
    nfa.set_init(init);
    ids.insert((p.init(), t.init()), init);
    let mut states = vec![(p.init(), t.init())];
    let mut i = 0;
    while i < states.len() {
        let key @ (ps, ts) = states[i];
        let from = ids[&key];
        nfa.set_final(from, p.is_final(ps));
        for a in 0..t.alphabet().len() {
            let to_key = (p.step(ps, a), t.step(ts, a));
            let to = *ids.entry(to_key).or_insert_with(|| {
                states.push(to_key);
                nfa.add_state()
            });
            let out = t.output(ts, a);
            if out.is_empty() {
                nfa.add_eps(from, to);
                continue;
            }
            let mut cur = from;
            for (j, &b) in out.iter().enumerate() {
                let nxt = if j + 1 == out.len() { to } else { nfa.add_state() };
                nfa.add_move(cur, b, nxt);
                cur = nxt;
            }
        }
        i += 1;
    }
    Ok(nfa.determinize().minimize())
}
