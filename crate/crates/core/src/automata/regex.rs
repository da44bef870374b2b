//! Regular expressions over a finite alphabet.
//!
//! Concrete syntax: literals, `.` (any symbol), character classes `[...]`
//! with ranges and `^` negation, concatenation, `|`, `*`, `+`, `?` and
//! parentheses. A backslash escapes the next character, so a literal
//! backslash is written `\\`.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Sym};
use crate::automata::dfa::Dfa;
use crate::automata::nfa::Nfa;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(char),
    Class(BTreeSet<char>),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    /// Parses the concrete syntax. Negated classes and `.` are resolved
    /// against `alphabet`.
    pub fn parse(src: &str, alphabet: &Alphabet) -> Result<Regex> {
        let chars: Vec<char> = src.chars().collect();
        let mut p = Parser { chars: &chars, pos: 0, alphabet };
        let re = p.alternation()?;
        if p.pos != chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(re)
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn optional(a: Regex) -> Regex {
        Regex::Optional(Box::new(a))
    }

    fn symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(c) => {
                out.insert(*c);
            }
            Regex::Class(cs) => out.extend(cs.iter().copied()),
            Regex::Concat(a, b) | Regex::Union(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            Regex::Star(a) | Regex::Optional(a) => a.symbols(out),
        }
    }

    /// Thompson construction into `nfa`; returns (entry, exit).
    fn build(&self, nfa: &mut Nfa) -> (usize, usize) {
        let alphabet = nfa.alphabet().clone();
        let s = nfa.add_state();
        let e = nfa.add_state();
        match self {
            Regex::Empty => {}
            Regex::Epsilon => nfa.add_eps(s, e),
            Regex::Literal(c) => {
                let a = alphabet.index_of(*c).expect("checked before construction");
                nfa.add_move(s, a, e);
            }
            Regex::Class(cs) => {
                for c in cs {
                    let a = alphabet.index_of(*c).expect("checked before construction");
                    nfa.add_move(s, a, e);
                }
            }
            Regex::Concat(a, b) => {
                let (a0, a1) = a.build(nfa);
                let (b0, b1) = b.build(nfa);
                nfa.add_eps(s, a0);
                nfa.add_eps(a1, b0);
                nfa.add_eps(b1, e);
            }
            Regex::Union(a, b) => {
                let (a0, a1) = a.build(nfa);
                let (b0, b1) = b.build(nfa);
                nfa.add_eps(s, a0);
                nfa.add_eps(s, b0);
                nfa.add_eps(a1, e);
                nfa.add_eps(b1, e);
            }
            Regex::Star(a) => {
                let (a0, a1) = a.build(nfa);
                nfa.add_eps(s, a0);
                nfa.add_eps(s, e);
                nfa.add_eps(a1, a0);
                nfa.add_eps(a1, e);
            }
            Regex::Optional(a) => {
                let (a0, a1) = a.build(nfa);
                nfa.add_eps(s, a0);
                nfa.add_eps(s, e);
                nfa.add_eps(a1, e);
            }
        }
        (s, e)
    }

    /// Compiles to a total, minimized DFA over `alphabet`.
    pub fn compile(&self, alphabet: &Alphabet) -> Result<Dfa> {
        let mut used = BTreeSet::new();
        self.symbols(&mut used);
        if let Some(c) = used.into_iter().find(|&c| alphabet.index_of(c).is_none()) {
            return Err(Error::ForeignSymbol(c));
        }
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, e) = self.build(&mut nfa);
        nfa.set_init(s);
        nfa.set_final(e, true);
        Ok(nfa.determinize().minimize())
    }

    /// Direct membership by derivative-free backtracking over positions.
    /// Exponential in the worst case; meant for small checks.
    pub fn matches(&self, w: &[Sym], alphabet: &Alphabet) -> bool {
        let chars: Vec<char> = w.iter().map(|&s| alphabet.char_of(s)).collect();
        self.ends(&chars, 0).contains(&chars.len())
    }

    fn ends(&self, w: &[char], start: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        match self {
            Regex::Empty => {}
            Regex::Epsilon => {
                out.insert(start);
            }
            Regex::Literal(c) => {
                if w.get(start) == Some(c) {
                    out.insert(start + 1);
                }
            }
            Regex::Class(cs) => {
                if w.get(start).is_some_and(|c| cs.contains(c)) {
                    out.insert(start + 1);
                }
            }
            Regex::Concat(a, b) => {
                for mid in a.ends(w, start) {
                    out.extend(b.ends(w, mid));
                }
            }
            Regex::Union(a, b) => {
                out.extend(a.ends(w, start));
                out.extend(b.ends(w, start));
            }
            Regex::Optional(a) => {
                out.insert(start);
                out.extend(a.ends(w, start));
            }
            Regex::Star(a) => {
                out.insert(start);
                let mut frontier = vec![start];
                while let Some(p) = frontier.pop() {
                    for q in a.ends(w, p) {
                        if out.insert(q) {
                            frontier.push(q);
                        }
                    }
                }
            }
        }
        out
    }
}

fn escape(c: char) -> String {
    if "\\.[]()|*+?^-".contains(c) {
        format!("\\{c}")
    } else {
        c.to_string()
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Empty => write!(f, "[]"),
            Regex::Epsilon => write!(f, "()"),
            Regex::Literal(c) => write!(f, "{}", escape(*c)),
            Regex::Class(cs) => {
                write!(f, "[")?;
                for c in cs {
                    write!(f, "{}", escape(*c))?;
                }
                write!(f, "]")
            }
            Regex::Concat(a, b) => write!(f, "({a}{b})"),
            Regex::Union(a, b) => write!(f, "({a}|{b})"),
            Regex::Star(a) => write!(f, "({a})*"),
            Regex::Optional(a) => write!(f, "({a})?"),
        }
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::RegexSyntax { offset: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alternation(&mut self) -> Result<Regex> {
        let mut re = self.concatenation()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.concatenation()?;
            re = Regex::union(re, rhs);
        }
        Ok(re)
    }

    fn concatenation(&mut self) -> Result<Regex> {
        let mut re: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let item = self.repetition()?;
            re = Some(match re {
                None => item,
                Some(prev) => Regex::concat(prev, item),
            });
        }
        Ok(re.unwrap_or(Regex::Epsilon))
    }

    fn repetition(&mut self) -> Result<Regex> {
        let mut re = self.atom()?;
        while let Some(c) = self.peek() {
            re = match c {
                '*' => Regex::star(re),
                '+' => Regex::concat(re.clone(), Regex::star(re)),
                '?' => Regex::optional(re),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(re)
    }

    fn escaped(&mut self) -> Result<char> {
        self.pos += 1;
        let c = self.peek().ok_or_else(|| self.error("dangling escape"))?;
        self.pos += 1;
        Ok(c)
    }

    fn atom(&mut self) -> Result<Regex> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of pattern"))?;
        match c {
            '(' => {
                self.pos += 1;
                let re = self.alternation()?;
                if self.peek() != Some(')') {
                    return Err(self.error("missing ')'"));
                }
                self.pos += 1;
                Ok(re)
            }
            '[' => self.class(),
            '.' => {
                self.pos += 1;
                Ok(Regex::Class(self.alphabet.symbols().iter().copied().collect()))
            }
            '*' | '+' | '?' => Err(self.error("repetition without operand")),
            ')' | ']' => Err(self.error("unbalanced bracket")),
            '\\' => Ok(Regex::Literal(self.escaped()?)),
            _ => {
                self.pos += 1;
                Ok(Regex::Literal(c))
            }
        }
    }

    fn class_char(&mut self) -> Result<char> {
        match self.peek() {
            Some('\\') => self.escaped(),
            Some(c) => {
                self.pos += 1;
                Ok(c)
            }
            None => Err(self.error("unterminated character class")),
        }
    }

    fn class(&mut self) -> Result<Regex> {
        self.pos += 1;
        let negated = self.peek() == Some('^');
        if negated {
            self.pos += 1;
        }
        // single characters must belong to the alphabet (checked at compile
        // time); ranges contribute only their members that do
        let mut set = BTreeSet::new();
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated character class")),
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                _ => {}
            }
            let lo = self.class_char()?;
            if self.peek() == Some('-') && self.chars.get(self.pos + 1).is_some_and(|&c| c != ']') {
                self.pos += 1;
                let hi = self.class_char()?;
                if hi < lo {
                    return Err(self.error("inverted range"));
                }
                set.extend(self.alphabet.symbols().iter().copied().filter(|&c| lo <= c && c <= hi));
            } else {
                set.insert(lo);
            }
        }
        if negated {
            set = self.alphabet.symbols().iter().copied().filter(|c| !set.contains(c)).collect();
        }
        Ok(Regex::Class(set))
    }
}
