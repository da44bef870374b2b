//! Quantifier-free formulas over booleans and linear integer arithmetic.
//!
//! The smart constructors fold constants, so families whose antecedents
//! are decided at encoding time vanish from the emitted document.

use std::collections::BTreeSet;

/// Index of a declared variable.
pub type VarId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(VarId),
    Const(i64),
    /// Sum of `coefficient * term` plus a constant.
    Linear(Vec<(i64, Term)>, i64),
    Ite(Box<Formula>, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cmp {
    Eq,
    Le,
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Bool(VarId),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Cmp(Cmp, Term, Term),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(v: VarId) -> Term {
        Term::Var(v)
    }

    pub fn int(c: i64) -> Term {
        Term::Const(c)
    }

    /// `a + b`.
    pub fn add(a: Term, b: Term) -> Term {
        Term::linear(vec![(1, a), (1, b)], 0)
    }

    /// `a - b`.
    pub fn sub(a: Term, b: Term) -> Term {
        Term::linear(vec![(1, a), (-1, b)], 0)
    }

    /// `sum(c_i * t_i) + k` with constants folded.
    pub fn linear(terms: Vec<(i64, Term)>, k: i64) -> Term {
        let mut constant = k;
        let mut rest = Vec::new();
        for (c, t) in terms {
            match t {
                Term::Const(v) => constant += c * v,
                Term::Linear(inner, ik) => {
                    constant += c * ik;
                    rest.extend(inner.into_iter().map(|(ic, it)| (c * ic, it)));
                }
                t if c != 0 => rest.push((c, t)),
                _ => {}
            }
        }
        match rest.as_slice() {
            [] => Term::Const(constant),
            [(1, _)] if constant == 0 => rest.pop().expect("one term").1,
            _ => Term::Linear(rest, constant),
        }
    }

    pub fn ite(c: Formula, a: Term, b: Term) -> Term {
        match c {
            Formula::True => a,
            Formula::False => b,
            c => Term::Ite(Box::new(c), Box::new(a), Box::new(b)),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Const(_) => {}
            Term::Linear(ts, _) => ts.iter().for_each(|(_, t)| t.collect_vars(out)),
            Term::Ite(c, a, b) => {
                c.collect_vars(out);
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            f => Formula::Not(Box::new(f)),
        }
    }

    pub fn and(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for f in fs {
            match f {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => out.extend(inner),
                f => out.push(f),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().expect("one conjunct"),
            _ => Formula::And(out),
        }
    }

    pub fn or(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for f in fs {
            match f {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => out.extend(inner),
                f => out.push(f),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().expect("one disjunct"),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        match (a, b) {
            (Formula::False, _) | (_, Formula::True) => Formula::True,
            (Formula::True, b) => b,
            (a, Formula::False) => Formula::not(a),
            (a, b) => Formula::Implies(Box::new(a), Box::new(b)),
        }
    }

    fn cmp(op: Cmp, a: Term, b: Term) -> Formula {
        if let (Term::Const(x), Term::Const(y)) = (&a, &b) {
            let holds = match op {
                Cmp::Eq => x == y,
                Cmp::Le => x <= y,
                Cmp::Lt => x < y,
            };
            return if holds { Formula::True } else { Formula::False };
        }
        if op == Cmp::Eq && a == b {
            return Formula::True;
        }
        Formula::Cmp(op, a, b)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Self::cmp(Cmp::Eq, a, b)
    }

    pub fn le(a: Term, b: Term) -> Formula {
        Self::cmp(Cmp::Le, a, b)
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Self::cmp(Cmp::Lt, a, b)
    }

    pub fn ge(a: Term, b: Term) -> Formula {
        Self::cmp(Cmp::Le, b, a)
    }

    pub fn ne(a: Term, b: Term) -> Formula {
        Self::not(Self::eq(a, b))
    }

    /// `v = c` for an integer variable.
    pub fn var_is(v: VarId, c: i64) -> Formula {
        Self::eq(Term::Var(v), Term::Const(c))
    }

    /// Distinct variables mentioned by the formula.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Bool(v) => {
                out.insert(*v);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Cmp(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates under a total assignment (booleans as 0/1).
    pub fn eval(&self, val: &dyn Fn(VarId) -> i64) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Bool(v) => val(*v) != 0,
            Formula::Not(f) => !f.eval(val),
            Formula::And(fs) => fs.iter().all(|f| f.eval(val)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(val)),
            Formula::Implies(a, b) => !a.eval(val) || b.eval(val),
            Formula::Cmp(op, a, b) => {
                let (x, y) = (a.eval(val), b.eval(val));
                match op {
                    Cmp::Eq => x == y,
                    Cmp::Le => x <= y,
                    Cmp::Lt => x < y,
                }
            }
        }
    }
}

impl Term {
    pub fn eval(&self, val: &dyn Fn(VarId) -> i64) -> i64 {
        match self {
            Term::Var(v) => val(*v),
            Term::Const(c) => *c,
            Term::Linear(ts, k) => ts.iter().map(|(c, t)| c * t.eval(val)).sum::<i64>() + k,
            Term::Ite(c, a, b) => {
                if c.eval(val) {
                    a.eval(val)
                } else {
                    b.eval(val)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_folding() {
        assert_eq!(Formula::eq(Term::int(2), Term::int(2)), Formula::True);
        assert_eq!(Formula::lt(Term::int(3), Term::int(2)), Formula::False);
        assert_eq!(Formula::and([Formula::True, Formula::Bool(0)]), Formula::Bool(0));
        assert_eq!(Formula::or([Formula::False, Formula::False]), Formula::False);
        assert_eq!(Formula::implies(Formula::False, Formula::Bool(1)), Formula::True);
        assert_eq!(Term::add(Term::int(1), Term::int(2)), Term::Const(3));
        assert_eq!(Term::add(Term::var(4), Term::int(0)), Term::Var(4));
    }

    #[test]
    fn evaluation() {
        let f = Formula::implies(Formula::Bool(0), Formula::le(Term::add(Term::var(1), Term::int(2)), Term::var(2)));
        let vals = [1, 3, 5];
        assert!(f.eval(&|v| vals[v]));
        let vals = [1, 4, 5];
        assert!(!f.eval(&|v| vals[v]));
        assert_eq!(f.vars().into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
