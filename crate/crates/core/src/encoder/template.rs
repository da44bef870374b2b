use std::collections::BTreeMap;

use crate::alphabet::Sym;
use crate::automata::Ft;
use crate::encoder::formula::Formula;
use crate::encoder::{Encoding, Family};
use crate::error::{Error, Result};

/// A transition fixed in advance: reading letter `letter` in `state` moves
/// to `target` and emits `output`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemplatePin {
    pub state: usize,
    pub letter: usize,
    pub target: usize,
    pub output: Vec<Sym>,
}

impl TemplatePin {
    /// Pins every transition of `t` except those in `skip`.
    pub fn from_ft(t: &Ft, skip: &[(usize, Sym)]) -> Vec<TemplatePin> {
        t.transitions()
            .filter(|tr| !skip.contains(&(tr.from, tr.symbol)))
            .map(|tr| TemplatePin { state: tr.from, letter: tr.symbol, target: tr.to, output: tr.output.to_vec() })
            .collect()
    }
}

impl Encoding {
    /// Equalities pinning `dst`, `olen` and the used `och` positions of
    /// every pinned transition; unpinned transitions stay free.
    pub fn encode_template(&mut self, pins: &[TemplatePin]) -> Result<()> {
        let mut seen: BTreeMap<(usize, usize), &TemplatePin> = BTreeMap::new();
        let n_sym = self.shape.alphabet.len();
        for pin in pins {
            if pin.state >= self.shape.k || pin.letter >= self.shape.letters() || pin.target >= self.shape.k {
                return Err(Error::InvalidInput(format!(
                    "template pin ({}, {}) -> {} is outside the transducer shape",
                    pin.state, pin.letter, pin.target
                )));
            }
            if pin.output.len() > self.shape.l || pin.output.iter().any(|&s| s >= n_sym) {
                return Err(Error::InvalidInput(format!(
                    "template output of ({}, {}) does not fit the output bound",
                    pin.state, pin.letter
                )));
            }
            if let Some(prev) = seen.insert((pin.state, pin.letter), pin) {
                if prev != pin {
                    let symbol = self.shape.alphabet.char_of(pin.letter % n_sym);
                    return Err(Error::TemplateConflict { state: pin.state, symbol });
                }
            }
        }
        for pin in seen.values() {
            let mut parts = vec![
                Formula::var_is(self.dst(pin.state, pin.letter), pin.target as i64),
                Formula::var_is(self.olen(pin.state, pin.letter), pin.output.len() as i64),
            ];
            for (z, &y) in pin.output.iter().enumerate() {
                parts.push(Formula::var_is(self.och(pin.state, pin.letter, z), y as i64));
            }
            self.add(Family::Template, Formula::and(parts));
        }
        Ok(())
    }
}
