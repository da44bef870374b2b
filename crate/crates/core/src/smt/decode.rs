use crate::alphabet::Sym;
use crate::automata::{Dfa, Ft, LookaheadFt};
use crate::encoder::{Encoding, VarKey};
use crate::error::{Error, Result};
use crate::smt::process::Model;

/// A decoded transducer, with or without lookahead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Plain(Ft),
    Lookahead(LookaheadFt),
}

impl Machine {
    pub fn run(&self, w: &str) -> Result<String> {
        match self {
            Machine::Plain(t) => t.run(w),
            Machine::Lookahead(t) => t.run(w),
        }
    }
}

fn value(model: &Model, enc: &Encoding, key: VarKey, lo: i64, hi: i64) -> Result<usize> {
    let id = enc.registry().get(&key).ok_or_else(|| Error::Decode(format!("{key:?} is not declared")))?;
    let name = &enc.registry().decl(id).name;
    let v = model.get(name).ok_or_else(|| Error::Decode(format!("model has no value for {name}")))?.as_i64();
    if v < lo || v > hi {
        return Err(Error::Decode(format!("{name} = {v} is outside [{lo}, {hi}]")));
    }
    Ok(v as usize)
}

/// Reads the transducer (and lookahead automaton) out of a model.
pub fn decode_model(model: &Model, enc: &Encoding) -> Result<Machine> {
    let shape = enc.shape();
    let (k, l, n_sym) = (shape.k as i64, shape.l, shape.alphabet.len() as i64);
    let mut err = None;
    let mut transition = |q: usize, x: usize| -> (usize, Vec<Sym>) {
        let res = (|| {
            let to = value(model, enc, VarKey::Dst { q, x }, 0, k - 1)?;
            let len = value(model, enc, VarKey::OutLen { q, x }, 0, l as i64)?;
            let out = (0..len)
                .map(|z| value(model, enc, VarKey::OutCh { q, x, z }, 0, n_sym - 1))
                .collect::<Result<Vec<_>>>()?;
            Ok((to, out))
        })();
        res.unwrap_or_else(|e: Error| {
            err.get_or_insert(e);
            (0, Vec::new())
        })
    };
    let machine = match shape.lookahead {
        None => Machine::Plain(Ft::from_fn(shape.alphabet.clone(), shape.k, 0, &mut transition)?),
        Some(k_r) => {
            let mut delta = Vec::with_capacity(k_r * shape.alphabet.len());
            for rho in 0..k_r {
                for a in 0..shape.alphabet.len() {
                    delta.push(value(model, enc, VarKey::Dr { rho, a }, 0, k_r as i64 - 1)?);
                }
            }
            let r = Dfa::from_parts(shape.alphabet.clone(), 0, vec![false; k_r], delta)?;
            Machine::Lookahead(LookaheadFt::from_fn(r, shape.k, 0, |q, rho, a| transition(q, shape.letter(rho, a)))?)
        }
    };
    match err {
        Some(e) => Err(e),
        None => Ok(machine),
    }
}
