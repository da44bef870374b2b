//! Lookahead variants of the example and type families. The lookahead
//! automaton `R` has `k_R` states with initial state 0 and transition
//! variables `dr(rho, a)`.

use crate::alphabet::Sym;
use crate::automata::Dfa;
use crate::encoder::formula::{Formula, Term, VarId};
use crate::encoder::registry::{Sort, VarKey};
use crate::encoder::{Encoding, Family};

impl Encoding {
    /// `dr(rho_next, a) = rho`; trivially true without lookahead.
    pub(crate) fn dr_is(&self, rho_next: usize, a: Sym, rho: usize) -> Formula {
        match self.shape.lookahead {
            None => Formula::True,
            Some(_) => Formula::var_is(self.var(VarKey::Dr { rho: rho_next, a }), rho as i64),
        }
    }

    /// Lookahead chain and keyed configuration steps for one example.
    pub(crate) fn encode_lookahead_example(&mut self, ex: usize, a: &[Sym], b: &[Sym], pos: &[VarId], st: &[VarId]) {
        let (n, m, k, k_r) = (a.len(), b.len(), self.shape.k, self.shape.k_r());
        let look: Vec<VarId> =
            (0..n).map(|i| self.registry.declare(VarKey::Look { ex, i }, Sort::range(0, k_r as i64 - 1))).collect();
        if n > 0 {
            // look(i) is the state R reaches on the reversed suffix after i
            let mut chain = vec![Formula::var_is(look[n - 1], 0)];
            for i in 0..n - 1 {
                for rho in 0..k_r {
                    chain.push(Formula::implies(
                        Formula::var_is(look[i + 1], rho as i64),
                        Formula::eq(Term::var(look[i]), Term::var(self.var(VarKey::Dr { rho, a: a[i + 1] }))),
                    ));
                }
            }
            self.add(Family::LookChain, Formula::and(chain));
        }
        for i in 0..n {
            for j in 0..=m {
                for c in 0..self.shape.alphabet.len() {
                    for rho in 0..k_r {
                        for q in 0..k {
                            if c != a[i] {
                                self.add(Family::LookStep, Formula::True);
                                continue;
                            }
                            let x = self.shape.letter(rho, c);
                            let body = self.step_body(q, x, j, b, pos[i + 1], st[i + 1]);
                            let guard = Formula::and([
                                Formula::var_is(pos[i], j as i64),
                                Formula::var_is(st[i], q as i64),
                                Formula::var_is(look[i], rho as i64),
                            ]);
                            self.add(Family::LookStep, Formula::implies(guard, body));
                        }
                    }
                }
            }
        }
    }

    /// Lookahead simulation: start, advancement and acceptance.
    pub(crate) fn encode_lookahead_types(&mut self, p: &Dfa, q: &Dfa) {
        let (k, k_r, n_q) = (self.shape.k, self.shape.k_r(), q.num_states());
        for ps in 0..p.num_states() {
            for t in 0..k {
                for r in 0..n_q {
                    for rho in 0..k_r {
                        self.registry.declare(VarKey::SimR { p: ps, q: t, r, rho }, Sort::Bool);
                    }
                }
            }
        }
        // a run may start in any lookahead state, so all of them are tracked
        let init = Formula::and((0..k_r).map(|rho| self.sim_term(p.init(), 0, q.init(), rho)).collect::<Vec<_>>());
        self.add(Family::LookTypeInit, init);

        for ps in 0..p.num_states() {
            for t in 0..k {
                for r in 0..n_q {
                    for rho in 0..k_r {
                        for rho_next in 0..k_r {
                            for c in 0..self.shape.alphabet.len() {
                                let x = self.shape.letter(rho_next, c);
                                let guard = Formula::and([self.sim_term(ps, t, r, rho), self.dr_is(rho_next, c, rho)]);
                                let (defs, rs) = self.output_chain(t, x, r, q);
                                let p_next = p.step(ps, c);
                                let (dst, olen) = (self.dst(t, x), self.olen(t, x));
                                let branches = (0..=self.shape.l).map(|z| {
                                    Formula::implies(
                                        Formula::var_is(olen, z as i64),
                                        Encoding::case_split(dst, k, &rs[z], n_q, |t2, r2| {
                                            self.sim_term(p_next, t2, r2, rho_next)
                                        }),
                                    )
                                });
                                let body = Formula::and(std::iter::once(defs).chain(branches));
                                self.add(Family::LookTypeStep, Formula::implies(guard, body));
                            }
                        }
                    }
                }
            }
        }

        let mut fin = Vec::new();
        for ps in p.finals() {
            for t in 0..k {
                for r in (0..n_q).filter(|&r| !q.is_final(r)) {
                    fin.push(Formula::not(self.sim_term(ps, t, r, 0)));
                }
            }
        }
        self.add(Family::LookTypeFinal, Formula::and(fin));
    }
}
