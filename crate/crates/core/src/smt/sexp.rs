//! Minimal s-expression reader for solver responses.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(l) => Some(l),
            Sexp::Atom(_) => None,
        }
    }
}

/// Parses every top-level expression in `src`.
pub fn parse_all(src: &str) -> Result<Vec<Sexp>> {
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        skip_ws(&chars, &mut pos);
        if pos >= chars.len() {
            return Ok(out);
        }
        out.push(parse_one(&chars, &mut pos)?);
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() {
        if chars[*pos].is_whitespace() {
            *pos += 1;
        } else if chars[*pos] == ';' {
            while *pos < chars.len() && chars[*pos] != '\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
}

fn parse_one(chars: &[char], pos: &mut usize) -> Result<Sexp> {
    skip_ws(chars, pos);
    let Some(&c) = chars.get(*pos) else {
        return Err(Error::SolverOutput("unexpected end of input".into()));
    };
    match c {
        '(' => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(chars, pos);
                match chars.get(*pos) {
                    None => return Err(Error::SolverOutput("unbalanced parenthesis".into())),
                    Some(')') => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(parse_one(chars, pos)?),
                }
            }
        }
        ')' => Err(Error::SolverOutput("unexpected ')'".into())),
        '|' | '"' => {
            let close = c;
            let start = *pos;
            *pos += 1;
            while *pos < chars.len() && chars[*pos] != close {
                *pos += 1;
            }
            if *pos >= chars.len() {
                return Err(Error::SolverOutput("unterminated quoted token".into()));
            }
            *pos += 1;
            let s: String = chars[start..*pos].iter().collect();
            let inner = if close == '|' { s[1..s.len() - 1].to_string() } else { s };
            Ok(Sexp::Atom(inner))
        }
        _ => {
            let start = *pos;
            while *pos < chars.len() && !chars[*pos].is_whitespace() && !matches!(chars[*pos], '(' | ')' | ';') {
                *pos += 1;
            }
            Ok(Sexp::Atom(chars[start..*pos].iter().collect()))
        }
    }
}
