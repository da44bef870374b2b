use std::fmt;

use crate::automata::Ft;
use crate::error::{Error, Result};
use crate::symbolic::interval::IntervalPred;
use crate::symbolic::minterm::{compute_minterms, MintermMap};
use crate::symbolic::sfa::check_guards;

/// Output term of a symbolic transition, applied to the input character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFunc {
    Identity,
    Offset(i64),
    Const(char),
}

impl OutputFunc {
    pub fn apply(&self, c: char) -> Result<char> {
        match *self {
            OutputFunc::Identity => Ok(c),
            OutputFunc::Const(d) => Ok(d),
            OutputFunc::Offset(k) => {
                let v = i64::from(c as u32) + k;
                u32::try_from(v)
                    .ok()
                    .and_then(char::from_u32)
                    .ok_or(Error::OffsetOutOfRange { ch: c as u32, offset: k })
            }
        }
    }
}

impl fmt::Display for OutputFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFunc::Identity => write!(f, "x"),
            OutputFunc::Offset(k) => write!(f, "x{k:+}"),
            OutputFunc::Const(c) => write!(f, "{c:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftTransition {
    pub from: usize,
    pub guard: IntervalPred,
    pub outputs: Vec<OutputFunc>,
    pub to: usize,
}

/// A deterministic, total symbolic transducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    universe: IntervalPred,
    num_states: usize,
    init: usize,
    transitions: Vec<SftTransition>,
}

impl Sft {
    pub fn new(
        universe: IntervalPred,
        num_states: usize,
        init: usize,
        transitions: Vec<SftTransition>,
    ) -> Result<Self> {
        if init >= num_states {
            return Err(Error::Construction(format!("initial state {init} out of range")));
        }
        check_guards(&universe, num_states, transitions.iter().map(|t| (t.from, &t.guard, t.to)))?;
        // offsets must stay inside the code-point range on the whole guard
        for t in &transitions {
            for f in &t.outputs {
                if let OutputFunc::Offset(_) = f {
                    for &(lo, hi) in t.guard.intervals() {
                        for c in [lo, hi] {
                            let ch = char::from_u32(c).unwrap_or('\0');
                            f.apply(ch)?;
                        }
                    }
                }
            }
        }
        Ok(Sft { universe, num_states, init, transitions })
    }

    pub fn universe(&self) -> &IntervalPred {
        &self.universe
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn transitions(&self) -> &[SftTransition] {
        &self.transitions
    }

    pub fn predicates(&self) -> Vec<IntervalPred> {
        self.transitions.iter().map(|t| t.guard.clone()).collect()
    }

    pub fn max_output_len(&self) -> usize {
        self.transitions.iter().map(|t| t.outputs.len()).max().unwrap_or(0)
    }

    pub fn transition(&self, q: usize, c: char) -> Option<&SftTransition> {
        self.transitions.iter().find(|t| t.from == q && t.guard.contains_char(c))
    }

    pub fn run(&self, w: &str) -> Result<String> {
        let mut q = self.init;
        let mut out = String::new();
        for c in w.chars() {
            let t = self.transition(q, c).ok_or(Error::ForeignSymbol(c))?;
            for f in &t.outputs {
                out.push(f.apply(c)?);
            }
            q = t.to;
        }
        Ok(out)
    }
}

/// Finitizes `m` over the minterms of its own guards.
pub fn finitize_sft(m: &Sft) -> Result<(Ft, MintermMap)> {
    let mm = compute_minterms(&m.predicates(), m.universe())?;
    let ft = finitize_sft_with(m, &mm)?;
    Ok((ft, mm))
}

/// Finitizes `m` over a partition refining its guards. Each output term is
/// evaluated at the input witness and the result replaced by the witness of
/// its minterm.
pub fn finitize_sft_with(m: &Sft, mm: &MintermMap) -> Result<Ft> {
    if mm.universe() != m.universe() {
        return Err(Error::InvalidInput("minterm universe differs from the transducer's".into()));
    }
    if let Some(t) = m.transitions.iter().find(|t| !mm.refines(&t.guard)) {
        return Err(Error::InvalidInput(format!("minterms do not refine guard {}", t.guard)));
    }
    let alpha = mm.alphabet().clone();
    let mut err = None;
    let ft = Ft::from_fn(alpha, m.num_states, m.init, |q, a| {
        let c = mm.witness(a);
        let t = m.transition(q, c).expect("total transducer");
        let mut out = Vec::with_capacity(t.outputs.len());
        for f in &t.outputs {
            match f.apply(c).and_then(|y| mm.minterm_of(y).ok_or(Error::ForeignSymbol(y))) {
                Ok(s) => out.push(s),
                Err(e) => {
                    err.get_or_insert(e);
                }
            }
        }
        (t.to, out)
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(ft),
    }
}

/// Recovers a symbolic transducer from one over the witness alphabet of
/// `mm`. Output symbol `y` on input witness `c` becomes the identity when
/// `y = c`; an offset when both minterms are single intervals of equal size
/// and `c`, `y` sit at the same position in them; a constant otherwise.
pub fn recover_sft(t: &Ft, mm: &MintermMap) -> Result<Sft> {
    if t.alphabet() != mm.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut transitions = Vec::with_capacity(t.num_states() * mm.len());
    for q in 0..t.num_states() {
        for a in 0..mm.len() {
            let c = mm.witness(a);
            let i1 = mm.predicate(a).as_single_interval();
            let outputs = t
                .output(q, a)
                .iter()
                .map(|&b| {
                    let y = mm.witness(b);
                    if y == c {
                        return OutputFunc::Identity;
                    }
                    if let (Some(i1), Some(i2)) = (i1, mm.predicate(b).as_single_interval()) {
                        let aligned = c as u32 - i1.0 == y as u32 - i2.0;
                        if i1.1 - i1.0 == i2.1 - i2.0 && aligned {
                            return OutputFunc::Offset(i64::from(i2.0) - i64::from(i1.0));
                        }
                    }
                    OutputFunc::Const(y)
                })
                .collect();
            transitions.push(SftTransition { from: q, guard: mm.predicate(a).clone(), outputs, to: t.step(q, a) });
        }
    }
    Sft::new(mm.universe().clone(), t.num_states(), t.init(), transitions)
}
