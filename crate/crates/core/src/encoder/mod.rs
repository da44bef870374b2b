//! Compilation of synthesis specifications into constraint systems.
//!
//! Every finite-domain function of the transducer is flattened into one
//! integer variable per domain point; distances are scaled to integers.
//! Each family is added independently, so callers compose examples,
//! types, distances, lookahead and templates freely.

mod distance;
mod examples;
pub mod formula;
mod lookahead;
pub mod registry;
mod stats;
mod template;
mod types;

pub use formula::{Cmp, Formula, Term, VarId};
pub use registry::{Sort, VarDecl, VarKey, VarRegistry};
pub use stats::{EncodingStats, Family};
pub use template::TemplatePin;

use crate::alphabet::{Alphabet, Sym};
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// Dimensions of the transducer being synthesized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransducerShape {
    pub k: usize,
    pub alphabet: Alphabet,
    pub l: usize,
    /// Number of lookahead states, when synthesizing with lookahead.
    pub lookahead: Option<usize>,
}

impl TransducerShape {
    pub fn plain(k: usize, alphabet: Alphabet, l: usize) -> Self {
        TransducerShape { k, alphabet, l, lookahead: None }
    }

    pub fn with_lookahead(k: usize, alphabet: Alphabet, l: usize, k_r: usize) -> Self {
        TransducerShape { k, alphabet, l, lookahead: Some(k_r) }
    }

    /// Lookahead states; one when there is no lookahead.
    pub fn k_r(&self) -> usize {
        self.lookahead.unwrap_or(1)
    }

    /// Size of the transducer's input alphabet (`Q_R x Σ` with lookahead).
    pub fn letters(&self) -> usize {
        self.k_r() * self.alphabet.len()
    }

    /// Letter index of the pair `(rho, a)`.
    pub fn letter(&self, rho: usize, a: Sym) -> usize {
        rho * self.alphabet.len() + a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub family: Family,
    pub formula: Formula,
}

/// A constraint system under construction.
#[derive(Debug, Clone)]
pub struct Encoding {
    shape: TransducerShape,
    registry: VarRegistry,
    assertions: Vec<Assertion>,
    stats: EncodingStats,
    examples: usize,
    types: Option<(Dfa, Dfa)>,
}

/// Declares `dst`, `och` and `olen` for a plain transducer with `k` states
/// and outputs of length at most `l`.
pub fn declare_transducer_vars(k: usize, sigma: &Alphabet, l: usize) -> Result<Encoding> {
    Encoding::new(TransducerShape::plain(k, sigma.clone(), l))
}

impl Encoding {
    pub fn new(shape: TransducerShape) -> Result<Self> {
        if shape.k == 0 || shape.l == 0 {
            return Err(Error::InvalidInput("k and l must be at least 1".into()));
        }
        if shape.lookahead == Some(0) {
            return Err(Error::InvalidInput("lookahead needs at least one state".into()));
        }
        let mut enc = Encoding {
            shape,
            registry: VarRegistry::new(),
            assertions: Vec::new(),
            stats: EncodingStats::default(),
            examples: 0,
            types: None,
        };
        let (k, l, n) = (enc.shape.k as i64, enc.shape.l, enc.shape.alphabet.len() as i64);
        for q in 0..enc.shape.k {
            for x in 0..enc.shape.letters() {
                enc.registry.declare(VarKey::Dst { q, x }, Sort::range(0, k - 1));
                for z in 0..l {
                    enc.registry.declare(VarKey::OutCh { q, x, z }, Sort::range(0, n - 1));
                }
                enc.registry.declare(VarKey::OutLen { q, x }, Sort::range(0, l as i64));
            }
        }
        if let Some(k_r) = enc.shape.lookahead {
            for rho in 0..k_r {
                for a in 0..enc.shape.alphabet.len() {
                    enc.registry.declare(VarKey::Dr { rho, a }, Sort::range(0, k_r as i64 - 1));
                }
            }
        }
        Ok(enc)
    }

    pub fn shape(&self) -> &TransducerShape {
        &self.shape
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.registry
    }

    pub fn assertions(&self) -> &[Assertion] {
        &self.assertions
    }

    pub fn stats(&self) -> &EncodingStats {
        &self.stats
    }

    /// Records one instance of `family`; trivially true instances are
    /// counted but not emitted.
    fn add(&mut self, family: Family, formula: Formula) {
        self.stats.record(family, &formula);
        if formula != Formula::True {
            self.assertions.push(Assertion { family, formula });
        }
    }

    fn var(&self, key: VarKey) -> VarId {
        self.registry.get(&key).unwrap_or_else(|| panic!("variable {key:?} is not declared"))
    }

    fn dst(&self, q: usize, x: usize) -> VarId {
        self.var(VarKey::Dst { q, x })
    }

    fn och(&self, q: usize, x: usize, z: usize) -> VarId {
        self.var(VarKey::OutCh { q, x, z })
    }

    fn olen(&self, q: usize, x: usize) -> VarId {
        self.var(VarKey::OutLen { q, x })
    }

    fn check_alphabet(&self, d: &Dfa) -> Result<()> {
        if d.alphabet() != &self.shape.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Fresh helpers `c_0..c_{l-1}` and `r^1..r^l` for reading the output
    /// of letter `x` at state `q` from output-type state `r`. Returns their
    /// definitions and the terms `r^0..r^l`, where `r^0` is `r` itself.
    fn output_chain(&mut self, q: usize, x: usize, r: usize, out_ty: &Dfa) -> (Formula, Vec<Term>) {
        let (l, n_sym, n_r) = (self.shape.l, self.shape.alphabet.len(), out_ty.num_states());
        let mut defs = Vec::with_capacity(2 * l);
        let mut cs = Vec::with_capacity(l);
        for z in 0..l {
            let c = self.registry.fresh("hc", Sort::range(0, n_sym as i64 - 1));
            defs.push(Formula::eq(Term::var(c), Term::var(self.och(q, x, z))));
            cs.push(c);
        }
        let mut rs = vec![Term::int(r as i64)];
        for z in 1..=l {
            let rz = self.registry.fresh("hq", Sort::range(0, n_r as i64 - 1));
            let prev = rs[z - 1].clone();
            for r_prev in 0..n_r {
                for a in 0..n_sym {
                    defs.push(Formula::implies(
                        Formula::and([
                            Formula::eq(prev.clone(), Term::int(r_prev as i64)),
                            Formula::var_is(cs[z - 1], a as i64),
                        ]),
                        Formula::var_is(rz, out_ty.step(r_prev, a) as i64),
                    ));
                }
            }
            rs.push(Term::var(rz));
        }
        (Formula::and(defs), rs)
    }

    /// `AND over (q', r') of (sel_q = q' & sel_r = r' => f(q', r'))`.
    fn case_split(
        sel_q: VarId,
        k: usize,
        sel_r: &Term,
        n_r: usize,
        mut f: impl FnMut(usize, usize) -> Formula,
    ) -> Formula {
        let mut parts = Vec::new();
        for q in 0..k {
            for r in 0..n_r {
                let guard =
                    Formula::and([Formula::var_is(sel_q, q as i64), Formula::eq(sel_r.clone(), Term::int(r as i64))]);
                if guard == Formula::False {
                    continue;
                }
                parts.push(Formula::implies(guard, f(q, r)));
            }
        }
        Formula::and(parts)
    }
}
