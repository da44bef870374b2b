use num_rational::Ratio;

use crate::encoder::formula::{Formula, Term};
use crate::encoder::registry::{Sort, VarKey};
use crate::encoder::{Encoding, Family};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
enum Budget {
    Mean { num: i64, den: i64 },
    Total(i64),
}

impl Encoding {
    /// Per-transition distance and energy constraints for a mean aggregate
    /// cost of at most `d`.
    /// Requires the types to be encoded first; with lookahead the energy
    /// function also ranges over lookahead states.
    pub fn encode_distance(&mut self, d: Ratio<i64>) -> Result<()> {
        if *d.numer() <= 0 {
            return Err(Error::InvalidInput(format!("distance bound must be positive, got {d}")));
        }
        self.encode_energy(Budget::Mean { num: *d.numer(), den: *d.denom() })
    }

    /// Budget constraints: aggregate cost at most `bound` on every input.
    pub fn encode_bounded_distance(&mut self, bound: u64) -> Result<()> {
        let bound = i64::try_from(bound).map_err(|_| Error::InvalidInput("distance bound too large".into()))?;
        self.encode_energy(Budget::Total(bound))
    }

    fn encode_energy(&mut self, budget: Budget) -> Result<()> {
        let (p, q) = self
            .types
            .clone()
            .ok_or_else(|| Error::InvalidInput("distance constraints need the type constraints".into()))?;
        if self.registry.get(&VarKey::Ed { q: 0, x: 0 }).is_some() {
            return Err(Error::InvalidInput("a distance bound is already encoded".into()));
        }
        let (k, l, n_sym, k_r) = (self.shape.k, self.shape.l, self.shape.alphabet.len(), self.shape.k_r());

        for t in 0..k {
            for x in 0..self.shape.letters() {
                let c = (x % n_sym) as i64;
                let ed = self.registry.declare(VarKey::Ed { q: t, x }, Sort::range(0, l as i64));
                let olen = self.olen(t, x);
                let contains = Formula::or((0..l).map(|z| {
                    Formula::and([
                        Formula::lt(Term::int(z as i64), Term::var(olen)),
                        Formula::var_is(self.och(t, x, z), c),
                    ])
                }));
                let cases = |minus: i64| {
                    Formula::and([
                        Formula::implies(Formula::var_is(olen, 0), Formula::var_is(ed, 1)),
                        Formula::implies(
                            Formula::ne(Term::var(olen), Term::int(0)),
                            Formula::eq(Term::var(ed), Term::linear(vec![(1, Term::var(olen))], -minus)),
                        ),
                    ])
                };
                self.add(Family::EdContains, Formula::implies(contains.clone(), cases(1)));
                self.add(Family::EdAbsent, Formula::implies(Formula::not(contains), cases(0)));
                if let Budget::Mean { num, den } = budget {
                    let wed = self.registry.declare(VarKey::Wed { q: t, x }, Sort::range(num - den * l as i64, num));
                    self.add(
                        Family::WedDef,
                        Formula::eq(Term::var(wed), Term::linear(vec![(-den, Term::var(ed))], num)),
                    );
                }
            }
        }

        let en =
            |enc: &mut Encoding, p, q, r, rho| enc.registry.declare(VarKey::En { p, q, r, rho }, Sort::unbounded());
        let (init_fam, step_fam) = match budget {
            Budget::Mean { .. } => (Family::EnergyInit, Family::EnergyStep),
            Budget::Total(_) => (Family::BoundedInit, Family::BoundedStep),
        };
        let start = match budget {
            Budget::Mean { .. } => 0,
            Budget::Total(b) => b,
        };
        let init = Formula::and(
            (0..k_r).map(|rho| Formula::var_is(en(self, p.init(), 0, q.init(), rho), start)).collect::<Vec<_>>(),
        );
        self.add(init_fam, init);

        let live = p.live_states();
        for ps in 0..p.num_states() {
            for t in 0..k {
                for r in 0..q.num_states() {
                    for rho in 0..k_r {
                        for rho_next in 0..k_r {
                            for c in 0..n_sym {
                                let p_next = p.step(ps, c);
                                if !live[p_next] {
                                    // energy beyond a dead input state is never inspected
                                    self.add(step_fam, Formula::True);
                                    continue;
                                }
                                let x = self.shape.letter(rho_next, c);
                                let guard = Formula::and([self.sim_term(ps, t, r, rho), self.dr_is(rho_next, c, rho)]);
                                let (defs, rs) = self.output_chain(t, x, r, &q);
                                let cur = en(self, ps, t, r, rho);
                                let cost = match budget {
                                    Budget::Mean { .. } => Term::var(self.var(VarKey::Wed { q: t, x })),
                                    Budget::Total(_) => {
                                        Term::linear(vec![(-1, Term::var(self.var(VarKey::Ed { q: t, x })))], 0)
                                    }
                                };
                                let mut targets = Vec::new();
                                for t2 in 0..k {
                                    for r2 in 0..q.num_states() {
                                        targets.push(en(self, p_next, t2, r2, rho_next));
                                    }
                                }
                                let dst = self.dst(t, x);
                                let olen = self.olen(t, x);
                                let n_q = q.num_states();
                                let branches = (0..=l).map(|z| {
                                    Formula::implies(
                                        Formula::var_is(olen, z as i64),
                                        Encoding::case_split(dst, k, &rs[z], n_q, |t2, r2| {
                                            Formula::le(
                                                Term::var(targets[t2 * n_q + r2]),
                                                Term::add(Term::var(cur), cost.clone()),
                                            )
                                        }),
                                    )
                                });
                                let body = Formula::and(std::iter::once(defs).chain(branches));
                                self.add(step_fam, Formula::implies(guard, body));
                            }
                        }
                    }
                }
            }
        }

        let mut fin = Vec::new();
        for ps in p.finals() {
            for t in 0..k {
                for r in 0..q.num_states() {
                    let e = en(self, ps, t, r, 0);
                    fin.push(Formula::implies(self.sim_term(ps, t, r, 0), Formula::ge(Term::var(e), Term::int(0))));
                }
            }
        }
        self.add(Family::EnergyFinal, Formula::and(fin));
        Ok(())
    }
}
