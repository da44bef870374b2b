use crate::automata::Dfa;
use crate::encoder::formula::Formula;
use crate::encoder::registry::{Sort, VarKey};
use crate::encoder::{Encoding, Family};
use crate::error::{Error, Result};

impl Encoding {
    /// Simulation constraints for `{P} T {Q}`, keyed by lookahead state when present.
    pub fn encode_types(&mut self, p: &Dfa, q: &Dfa) -> Result<()> {
        self.check_alphabet(p)?;
        self.check_alphabet(q)?;
        if self.types.is_some() {
            return Err(Error::InvalidInput("types are already encoded".into()));
        }
        self.types = Some((p.clone(), q.clone()));
        if self.shape.lookahead.is_some() {
            self.encode_lookahead_types(p, q);
            return Ok(());
        }
        let k = self.shape.k;
        for ps in 0..p.num_states() {
            for t in 0..k {
                for r in 0..q.num_states() {
                    self.registry.declare(VarKey::Sim { p: ps, q: t, r }, Sort::Bool);
                }
            }
        }
        let sim = |enc: &Encoding, p, q, r| Formula::Bool(enc.var(VarKey::Sim { p, q, r }));

        self.add(Family::TypeInit, sim(self, p.init(), 0, q.init()));

        for ps in 0..p.num_states() {
            for t in 0..k {
                for r in 0..q.num_states() {
                    for c in 0..self.shape.alphabet.len() {
                        let (defs, rs) = self.output_chain(t, c, r, q);
                        let p_next = p.step(ps, c);
                        let dst = self.dst(t, c);
                        let olen = self.olen(t, c);
                        let branches = (0..=self.shape.l).map(|z| {
                            Formula::implies(
                                Formula::var_is(olen, z as i64),
                                Encoding::case_split(dst, k, &rs[z], q.num_states(), |t2, r2| {
                                    sim(self, p_next, t2, r2)
                                }),
                            )
                        });
                        let body = Formula::and(std::iter::once(defs).chain(branches));
                        let f = Formula::implies(sim(self, ps, t, r), body);
                        self.add(Family::TypeStep, f);
                    }
                }
            }
        }

        let mut fin = Vec::new();
        for ps in p.finals() {
            for t in 0..k {
                for r in (0..q.num_states()).filter(|&r| !q.is_final(r)) {
                    fin.push(Formula::not(sim(self, ps, t, r)));
                }
            }
        }
        self.add(Family::TypeFinal, Formula::and(fin));
        Ok(())
    }

    /// The encoded types, if any.
    pub fn types(&self) -> Option<&(Dfa, Dfa)> {
        self.types.as_ref()
    }

    pub(crate) fn sim_term(&self, p: usize, q: usize, r: usize, rho: usize) -> Formula {
        if self.shape.lookahead.is_some() {
            Formula::Bool(self.var(VarKey::SimR { p, q, r, rho }))
        } else {
            Formula::Bool(self.var(VarKey::Sim { p, q, r }))
        }
    }
}
