use crate::encoder::formula::{Formula, Term};
use crate::encoder::registry::{Sort, VarKey};
use crate::encoder::{Encoding, Family};
use crate::error::{Error, Result};

impl Encoding {
    /// Initial, step and final configuration constraints for the example
    /// `s -> t`; steps are keyed by lookahead state when present.
    pub fn encode_example(&mut self, s: &str, t: &str) -> Result<()> {
        let a = self.shape.alphabet.encode(s)?;
        let b = self.shape.alphabet.encode(t)?;
        let (n, m, k, l) = (a.len(), b.len(), self.shape.k, self.shape.l);
        if m > n * l {
            return Err(Error::InvalidInput(format!(
                "example output {t:?} is longer than {n} * l = {}; no transducer can produce it",
                n * l
            )));
        }
        let ex = self.examples;
        self.examples += 1;
        let mut pos = Vec::with_capacity(n + 1);
        let mut st = Vec::with_capacity(n + 1);
        for i in 0..=n {
            pos.push(self.registry.declare(VarKey::CfgPos { ex, i }, Sort::range(0, m as i64)));
            st.push(self.registry.declare(VarKey::CfgState { ex, i }, Sort::range(0, k as i64 - 1)));
        }
        self.add(Family::ExampleInit, Formula::and([Formula::var_is(pos[0], 0), Formula::var_is(st[0], 0)]));

        if self.shape.lookahead.is_some() {
            self.encode_lookahead_example(ex, &a, &b, &pos, &st);
        } else {
            for i in 0..n {
                for j in 0..m {
                    for c in 0..self.shape.alphabet.len() {
                        for q in 0..k {
                            if c != a[i] {
                                // antecedent a_i = c is false
                                self.add(Family::ExampleStep, Formula::True);
                                continue;
                            }
                            let body = self.step_body(q, c, j, &b, pos[i + 1], st[i + 1]);
                            let guard =
                                Formula::and([Formula::var_is(pos[i], j as i64), Formula::var_is(st[i], q as i64)]);
                            self.add(Family::ExampleStep, Formula::implies(guard, body));
                        }
                    }
                }
                for q in 0..k {
                    let f = self.exhausted(q, a[i], m, pos[i], st[i], pos[i + 1], st[i + 1]);
                    self.add(Family::ExampleExhausted, f);
                }
            }
        }

        let fin = Formula::or(
            (0..k).map(|q| Formula::and([Formula::var_is(pos[n], m as i64), Formula::var_is(st[n], q as i64)])),
        );
        self.add(Family::ExampleFinal, fin);
        Ok(())
    }

    /// Body of the step constraint: the transition on letter `x` from `q`
    /// emits `b[j..j+len]` and moves the configuration.
    pub(crate) fn step_body(
        &self,
        q: usize,
        x: usize,
        j: usize,
        b: &[usize],
        pos_next: usize,
        st_next: usize,
    ) -> Formula {
        let olen = self.olen(q, x);
        let mut parts = Vec::with_capacity(self.shape.l + 2);
        for z in 0..self.shape.l {
            // positions past the end of the output cannot be matched
            let matches = match b.get(j + z) {
                Some(&bz) => Formula::var_is(self.och(q, x, z), bz as i64),
                None => Formula::False,
            };
            parts.push(Formula::or([matches, Formula::le(Term::var(olen), Term::int(z as i64))]));
        }
        parts.push(Formula::eq(Term::var(pos_next), Term::add(Term::int(j as i64), Term::var(olen))));
        parts.push(Formula::eq(Term::var(st_next), Term::var(self.dst(q, x))));
        Formula::and(parts)
    }

    #[allow(clippy::too_many_arguments)]
    fn exhausted(
        &self,
        q: usize,
        x: usize,
        m: usize,
        pos: usize,
        st: usize,
        pos_next: usize,
        st_next: usize,
    ) -> Formula {
        Formula::implies(
            Formula::and([Formula::var_is(pos, m as i64), Formula::var_is(st, q as i64)]),
            Formula::and([
                Formula::var_is(self.olen(q, x), 0),
                Formula::var_is(pos_next, m as i64),
                Formula::eq(Term::var(st_next), Term::var(self.dst(q, x))),
            ]),
        )
    }
}
