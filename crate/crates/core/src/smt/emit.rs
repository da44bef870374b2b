use std::fmt::Write;

use crate::encoder::{Cmp, Encoding, Formula, Sort, Term, VarRegistry};

/// Renders the encoding as an SMT-LIB v2 script: declarations, range
/// assertions, the constraints in order, `check-sat` and a `get-value`
/// over every declared variable.
pub fn emit_smtlib(enc: &Encoding, logic: &str) -> String {
    let reg = enc.registry();
    let mut out = String::new();
    if !reg.is_empty() {
        out.push_str("(set-option :produce-models true)\n");
    }
    writeln!(out, "(set-logic {logic})").unwrap();
    for d in reg.decls() {
        let sort = if d.sort == Sort::Bool { "Bool" } else { "Int" };
        writeln!(out, "(declare-const {} {sort})", d.name).unwrap();
    }
    for d in reg.decls() {
        if let Sort::Int { lo, hi } = d.sort {
            let parts: Vec<String> = [
                lo.map(|lo| format!("(<= {} {})", num(lo), d.name)),
                hi.map(|hi| format!("(<= {} {})", d.name, num(hi))),
            ]
            .into_iter()
            .flatten()
            .collect();
            match parts.as_slice() {
                [] => {}
                [one] => writeln!(out, "(assert {one})").unwrap(),
                _ => writeln!(out, "(assert (and {}))", parts.join(" ")).unwrap(),
            }
        }
    }
    for a in enc.assertions() {
        out.push_str("(assert ");
        formula(&mut out, reg, &a.formula);
        out.push_str(")\n");
    }
    out.push_str("(check-sat)\n");
    if !reg.is_empty() {
        out.push_str("(get-value (");
        for (i, d) in reg.decls().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&d.name);
        }
        out.push_str("))\n");
    }
    out.push_str("(exit)\n");
    out
}

fn num(v: i64) -> String {
    if v < 0 {
        format!("(- {})", v.unsigned_abs())
    } else {
        v.to_string()
    }
}

fn formula(out: &mut String, reg: &VarRegistry, f: &Formula) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Bool(v) => out.push_str(&reg.decl(*v).name),
        Formula::Not(g) => {
            out.push_str("(not ");
            formula(out, reg, g);
            out.push(')');
        }
        Formula::And(fs) | Formula::Or(fs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in fs {
                out.push(' ');
                formula(out, reg, g);
            }
            out.push(')');
        }
        Formula::Implies(a, b) => {
            out.push_str("(=> ");
            formula(out, reg, a);
            out.push(' ');
            formula(out, reg, b);
            out.push(')');
        }
        Formula::Cmp(op, a, b) => {
            out.push_str(match op {
                Cmp::Eq => "(= ",
                Cmp::Le => "(<= ",
                Cmp::Lt => "(< ",
            });
            term(out, reg, a);
            out.push(' ');
            term(out, reg, b);
            out.push(')');
        }
    }
}

fn term(out: &mut String, reg: &VarRegistry, t: &Term) {
    match t {
        Term::Var(v) => out.push_str(&reg.decl(*v).name),
        Term::Const(c) => out.push_str(&num(*c)),
        Term::Linear(ts, k) => {
            out.push_str("(+");
            for (c, t) in ts {
                out.push(' ');
                if *c == 1 {
                    term(out, reg, t);
                } else {
                    write!(out, "(* {} ", num(*c)).unwrap();
                    term(out, reg, t);
                    out.push(')');
                }
            }
            if *k != 0 || ts.len() < 2 {
                write!(out, " {}", num(*k)).unwrap();
            }
            out.push(')');
        }
        Term::Ite(c, a, b) => {
            out.push_str("(ite ");
            formula(out, reg, c);
            out.push(' ');
            term(out, reg, a);
            out.push(' ');
            term(out, reg, b);
            out.push(')');
        }
    }
}
