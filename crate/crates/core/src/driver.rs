//! Synthesis front end: normalizes a [`SynthesisSpec`], encodes it, runs
//! the solver and checks the decoded machine with the exact oracles.
//!
//! In symbolic mode every predicate appearing in the types (plus any
//! custom minterms) is refined into minterms, types and examples are
//! mapped onto minterm witnesses, and the finite solution is lifted back
//! into an [`Sft`]. Examples must behave uniformly on each minterm; a
//! lifted machine that disagrees with a concrete example is reported as
//! [`Outcome::NoSolution`] with a diagnostic.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use crate::alphabet::Alphabet;
use crate::automata::{compile_regex, restrict_union, Dfa, DomainRestrictedFt, Ft, LookaheadFt};
use crate::encoder::{Encoding, EncodingStats, TemplatePin, TransducerShape};
use crate::error::{Error, Result};
use crate::oracle::{
    check_mean_aggregate, check_mean_aggregate_lookahead, check_total_aggregate, check_total_aggregate_lookahead,
    hoare_check, hoare_check_lookahead, CostVerdict, HoareVerdict,
};
use crate::smt::{decode_model, emit_smtlib, solve_cancellable, Machine, SolverConfig, Verdict};
use crate::symbolic::{compute_minterms, finitize_sfa_with, recover_sft, IntervalPred, MintermMap, Sfa, Sft};
use crate::Rational;

/// Universes wider than this are rejected when a regex has to be compiled
/// over every character.
const MAX_REGEX_UNIVERSE: u64 = 1 << 16;

/// Input or output type.
#[derive(Debug, Clone)]
pub enum TypeSpec {
    Regex(String),
    Dfa(Dfa),
    /// Only meaningful in symbolic mode.
    Sfa(Sfa),
}

/// Bound on the edit distance between inputs and outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    /// Mean edit distance at most `d` over every accepted input.
    Mean(Rational),
    /// Aggregate edit distance at most the constant.
    Total(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetSpec {
    Finite(Alphabet),
    /// A character universe; the working alphabet becomes its minterms.
    Symbolic(IntervalPred),
}

/// A transition fixed in the template: reading `on` in `from` goes to `to`
/// emitting `output`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedTransition {
    pub from: usize,
    pub on: char,
    pub to: usize,
    pub output: String,
}

#[derive(Debug, Clone)]
pub struct SynthesisSpec {
    pub alphabet: AlphabetSpec,
    /// Number of transducer states.
    pub k: usize,
    /// Maximum output length per transition.
    pub l: usize,
    pub examples: Vec<(String, String)>,
    pub input_type: Option<TypeSpec>,
    pub output_type: Option<TypeSpec>,
    pub distance: Option<DistanceBound>,
    /// Number of lookahead states; `None` synthesizes a plain transducer.
    pub lookahead: Option<usize>,
    pub template: Vec<PinnedTransition>,
    /// Extra predicates refining the minterms in symbolic mode.
    pub custom_minterms: Vec<IntervalPred>,
}

impl SynthesisSpec {
    pub fn new(alphabet: Alphabet, k: usize, l: usize) -> Self {
        SynthesisSpec::over(AlphabetSpec::Finite(alphabet), k, l)
    }

    pub fn symbolic(universe: IntervalPred, k: usize, l: usize) -> Self {
        SynthesisSpec::over(AlphabetSpec::Symbolic(universe), k, l)
    }

    fn over(alphabet: AlphabetSpec, k: usize, l: usize) -> Self {
        SynthesisSpec {
            alphabet,
            k,
            l,
            examples: Vec::new(),
            input_type: None,
            output_type: None,
            distance: None,
            lookahead: None,
            template: Vec::new(),
            custom_minterms: Vec::new(),
        }
    }

    pub fn example(mut self, input: &str, output: &str) -> Self {
        self.examples.push((input.to_owned(), output.to_owned()));
        self
    }

    pub fn types(mut self, input: TypeSpec, output: TypeSpec) -> Self {
        self.input_type = Some(input);
        self.output_type = Some(output);
        self
    }

    pub fn distance(mut self, bound: DistanceBound) -> Self {
        self.distance = Some(bound);
        self
    }

    pub fn lookahead(mut self, k_r: usize) -> Self {
        self.lookahead = Some(k_r);
        self
    }
}

/// A spec lowered to the finite alphabet the encoder works on.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub alphabet: Alphabet,
    pub k: usize,
    pub l: usize,
    pub lookahead: Option<usize>,
    /// Examples over `alphabet` (witnesses in symbolic mode).
    pub examples: Vec<(String, String)>,
    /// The caller's examples, before witness mapping.
    pub concrete_examples: Vec<(String, String)>,
    pub types: Option<(Dfa, Dfa)>,
    pub distance: Option<DistanceBound>,
    pub pins: Vec<TemplatePin>,
    pub minterms: Option<MintermMap>,
}

impl Prepared {
    /// The input type, or every word when none was given.
    pub fn input_type(&self) -> Dfa {
        match &self.types {
            Some((p, _)) => p.clone(),
            None => Dfa::universal(self.alphabet.clone()),
        }
    }

    /// First example whose output is longer than `l` times its input.
    pub fn oversized_example(&self) -> Option<&(String, String)> {
        self.examples.iter().find(|(s, t)| t.chars().count() > s.chars().count() * self.l)
    }

    /// Builds the constraint set.
    pub fn encode(&self) -> Result<Encoding> {
        let shape = match self.lookahead {
            None => TransducerShape::plain(self.k, self.alphabet.clone(), self.l),
            Some(k_r) => TransducerShape::with_lookahead(self.k, self.alphabet.clone(), self.l, k_r),
        };
        let mut enc = Encoding::new(shape)?;
        for (s, t) in &self.examples {
            enc.encode_example(s, t)?;
        }
        // the distance constraints range over the simulation variables
        if self.types.is_some() || self.distance.is_some() {
            let (p, q) = match &self.types {
                Some((p, q)) => (p.clone(), q.clone()),
                None => (Dfa::universal(self.alphabet.clone()), Dfa::universal(self.alphabet.clone())),
            };
            enc.encode_types(&p, &q)?;
        }
        match self.distance {
            Some(DistanceBound::Mean(d)) => enc.encode_distance(d)?,
            Some(DistanceBound::Total(b)) => enc.encode_bounded_distance(b)?,
            None => {}
        }
        if !self.pins.is_empty() {
            enc.encode_template(&self.pins)?;
        }
        Ok(enc)
    }

    fn with_bounds(&self, k: usize, k_r: Option<usize>) -> Prepared {
        Prepared { k, lookahead: k_r, ..self.clone() }
    }
}

pub(crate) fn finite_type(ty: &TypeSpec, alphabet: &Alphabet) -> Result<Dfa> {
    match ty {
        TypeSpec::Regex(src) => compile_regex(src, alphabet),
        TypeSpec::Dfa(d) if d.alphabet() == alphabet => Ok(d.clone()),
        TypeSpec::Dfa(_) => Err(Error::AlphabetMismatch),
        TypeSpec::Sfa(_) => Err(Error::InvalidInput("symbolic types need a symbolic alphabet".into())),
    }
}

pub(crate) fn symbolic_type(ty: &TypeSpec, universe: &IntervalPred) -> Result<Sfa> {
    match ty {
        TypeSpec::Sfa(m) if m.universe() == universe => Ok(m.clone()),
        TypeSpec::Sfa(_) => Err(Error::InvalidInput("type is defined over a different universe".into())),
        TypeSpec::Dfa(d) => Sfa::from_dfa(d, universe),
        TypeSpec::Regex(src) => {
            if universe.size() > MAX_REGEX_UNIVERSE {
                return Err(Error::InvalidInput(format!(
                    "regex types need a universe of at most {MAX_REGEX_UNIVERSE} characters"
                )));
            }
            let alphabet = Alphabet::new(universe.chars())?;
            Sfa::from_dfa(&compile_regex(src, &alphabet)?, universe)
        }
    }
}

fn pins_over(
    template: &[PinnedTransition],
    alphabet: &Alphabet,
    map: impl Fn(char) -> Result<char>,
) -> Result<Vec<TemplatePin>> {
    template
        .iter()
        .map(|p| {
            let letter = alphabet.index_of(map(p.on)?).ok_or(Error::ForeignSymbol(p.on))?;
            let output = p.output.chars().map(&map).collect::<Result<String>>()?;
            Ok(TemplatePin { state: p.from, letter, target: p.to, output: alphabet.encode(&output)? })
        })
        .collect()
}

/// Lowers `spec` to the encoder's finite alphabet.
pub fn prepare(spec: &SynthesisSpec) -> Result<Prepared> {
    if spec.k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if spec.lookahead == Some(0) {
        return Err(Error::InvalidInput("the lookahead automaton needs at least one state".into()));
    }
    if spec.lookahead.is_some() && !spec.template.is_empty() {
        return Err(Error::InvalidInput("templates are only supported for plain transducers".into()));
    }
    if let Some(DistanceBound::Mean(d)) = spec.distance {
        if d <= Rational::from_integer(0) {
            return Err(Error::InvalidInput("mean distance bound must be positive".into()));
        }
    }
    if spec.input_type.is_some() != spec.output_type.is_some() {
        return Err(Error::InvalidInput("input and output types must be given together".into()));
    }
    let (alphabet, examples, types, pins, minterms) = match &spec.alphabet {
        AlphabetSpec::Finite(alphabet) => {
            if alphabet.is_empty() {
                return Err(Error::InvalidAlphabet("alphabet is empty".into()));
            }
            for (s, t) in &spec.examples {
                alphabet.encode(s)?;
                alphabet.encode(t)?;
            }
            let types = match (&spec.input_type, &spec.output_type) {
                (Some(p), Some(q)) => Some((finite_type(p, alphabet)?, finite_type(q, alphabet)?)),
                _ => None,
            };
            let pins = pins_over(&spec.template, alphabet, Ok)?;
            (alphabet.clone(), spec.examples.clone(), types, pins, None)
        }
        AlphabetSpec::Symbolic(universe) => {
            if universe.is_empty() {
                return Err(Error::InvalidAlphabet("universe is empty".into()));
            }
            let sfas = match (&spec.input_type, &spec.output_type) {
                (Some(p), Some(q)) => Some((symbolic_type(p, universe)?, symbolic_type(q, universe)?)),
                _ => None,
            };
            let mut preds = spec.custom_minterms.clone();
            if let Some((p, q)) = &sfas {
                preds.extend(p.predicates());
                preds.extend(q.predicates());
            }
            let mm = compute_minterms(&preds, universe)?;
            let examples = spec
                .examples
                .iter()
                .map(|(s, t)| Ok((mm.to_witnesses(s)?, mm.to_witnesses(t)?)))
                .collect::<Result<Vec<_>>>()?;
            let types = match &sfas {
                Some((p, q)) => Some((finitize_sfa_with(p, &mm)?, finitize_sfa_with(q, &mm)?)),
                None => None,
            };
            let pins = pins_over(&spec.template, mm.alphabet(), |c| {
                mm.witness_of(c).ok_or_else(|| Error::InvalidInput(format!("{c:?} is outside the universe")))
            })?;
            (mm.alphabet().clone(), examples, types, pins, Some(mm))
        }
    };
    Ok(Prepared {
        alphabet,
        k: spec.k,
        l: spec.l,
        lookahead: spec.lookahead,
        examples,
        concrete_examples: spec.examples.clone(),
        types,
        distance: spec.distance,
        pins,
        minterms,
    })
}

/// A verified solution.
#[derive(Debug, Clone)]
pub struct Solution {
    pub machine: Machine,
    /// The plain transducer restricted to the input type.
    pub restricted: Option<DomainRestrictedFt>,
    /// The solution lifted back to character predicates (symbolic mode).
    pub sft: Option<Sft>,
    pub minterms: Option<MintermMap>,
}

impl Solution {
    pub fn ft(&self) -> Option<&Ft> {
        match &self.machine {
            Machine::Plain(t) => Some(t),
            Machine::Lookahead(_) => None,
        }
    }

    pub fn lookahead(&self) -> Option<&LookaheadFt> {
        match &self.machine {
            Machine::Lookahead(t) => Some(t),
            Machine::Plain(_) => None,
        }
    }

    /// Runs the solution on a concrete input, going through the lifted
    /// transducer in symbolic mode.
    pub fn run(&self, w: &str) -> Result<String> {
        match (&self.sft, &self.machine) {
            (Some(sft), _) => sft.run(w),
            (None, Machine::Lookahead(t)) if self.minterms.is_some() => {
                let mm = self.minterms.as_ref().expect("checked");
                t.run(&mm.to_witnesses(w)?)
            }
            (None, m) => m.run(w),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Found(Box<Solution>),
    NoSolution,
    Timeout,
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::NoSolution => "no-solution",
            Outcome::Timeout => "timeout",
        }
    }
}

/// One solver call of a (possibly deepening) search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub k: usize,
    pub k_r: Option<usize>,
    pub verdict: &'static str,
    pub solver_time: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub stats: Option<EncodingStats>,
    pub solver_time: Duration,
    pub attempts: Vec<Attempt>,
    /// Checks passed by the returned machine.
    pub verified: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub outcome: Outcome,
    pub diagnostics: Diagnostics,
}

/// Runs every oracle the spec calls for. A failure means the encoding and
/// the oracles disagree, which is reported as [`Error::Soundness`].
pub fn verify(prepared: &Prepared, machine: &Machine) -> Result<Vec<String>> {
    let mut passed = Vec::new();
    for (s, t) in &prepared.examples {
        let got = machine.run(s)?;
        if &got != t {
            return Err(Error::Soundness(format!("example {s:?} yields {got:?}, expected {t:?}")));
        }
    }
    passed.push(format!("{} examples", prepared.examples.len()));
    for pin in &prepared.pins {
        if let Machine::Plain(t) = machine {
            if t.step(pin.state, pin.letter) != pin.target || t.output(pin.state, pin.letter) != pin.output.as_slice() {
                return Err(Error::Soundness(format!("template pin ({}, {}) not respected", pin.state, pin.letter)));
            }
        }
    }
    if !prepared.pins.is_empty() {
        passed.push(format!("{} template pins", prepared.pins.len()));
    }
    if let Some((p, q)) = &prepared.types {
        let verdict = match machine {
            Machine::Plain(t) => hoare_check(p, t, q)?,
            Machine::Lookahead(t) => hoare_check_lookahead(p, t, q)?,
        };
        if let HoareVerdict::Counterexample(w) = verdict {
            return Err(Error::Soundness(format!("input {w:?} is mapped outside the output type")));
        }
        passed.push("hoare triple".into());
    }
    if let Some(bound) = prepared.distance {
        let p = prepared.input_type();
        let verdict = match (bound, machine) {
            (DistanceBound::Mean(d), Machine::Plain(t)) => check_mean_aggregate(&p, t, d)?,
            (DistanceBound::Mean(d), Machine::Lookahead(t)) => check_mean_aggregate_lookahead(&p, t, d)?,
            (DistanceBound::Total(b), Machine::Plain(t)) => check_total_aggregate(&p, t, b)?,
            (DistanceBound::Total(b), Machine::Lookahead(t)) => check_total_aggregate_lookahead(&p, t, b)?,
        };
        if let CostVerdict::Exceeds { witness, .. } = verdict {
            return Err(Error::Soundness(format!("input {witness:?} exceeds the distance bound")));
        }
        passed.push("distance bound".into());
    }
    Ok(passed)
}

fn run_prepared(prepared: &Prepared, cfg: &SolverConfig, cancel: &AtomicBool) -> Result<SynthesisResult> {
    let mut diagnostics = Diagnostics::default();
    if let Some((s, t)) = prepared.oversized_example() {
        diagnostics.notes.push(format!("output {t:?} is longer than l times the input {s:?}"));
        diagnostics.attempts.push(Attempt {
            k: prepared.k,
            k_r: prepared.lookahead,
            verdict: "no-solution",
            solver_time: Duration::ZERO,
        });
        return Ok(SynthesisResult { outcome: Outcome::NoSolution, diagnostics });
    }
    let enc = prepared.encode()?;
    diagnostics.stats = Some(enc.stats().clone());
    let doc = emit_smtlib(&enc, &cfg.logic);
    let solved = solve_cancellable(&doc, cfg, cancel)?;
    diagnostics.solver_time = solved.elapsed;
    let outcome = match solved.verdict {
        Verdict::Unsat => Outcome::NoSolution,
        Verdict::Timeout => Outcome::Timeout,
        Verdict::Unknown => {
            diagnostics.notes.push("solver answered unknown".into());
            Outcome::Timeout
        }
        Verdict::Sat(model) => {
            let machine = decode_model(&model, &enc)?;
            diagnostics.verified = verify(prepared, &machine)?;
            lift(prepared, machine, &mut diagnostics)?
        }
    };
    diagnostics.attempts.push(Attempt {
        k: prepared.k,
        k_r: prepared.lookahead,
        verdict: outcome.label(),
        solver_time: solved.elapsed,
    });
    Ok(SynthesisResult { outcome, diagnostics })
}

fn lift(prepared: &Prepared, machine: Machine, diagnostics: &mut Diagnostics) -> Result<Outcome> {
    let restricted = match (&machine, &prepared.types) {
        (Machine::Plain(t), Some((p, _))) => Some(restrict_union(vec![(t.clone(), p.clone())])?),
        _ => None,
    };
    let Some(mm) = &prepared.minterms else {
        return Ok(Outcome::Found(Box::new(Solution { machine, restricted, sft: None, minterms: None })));
    };
    let sft = match &machine {
        Machine::Plain(t) => Some(recover_sft(t, mm)?),
        Machine::Lookahead(_) => None,
    };
    let solution = Solution { machine, restricted, sft, minterms: Some(mm.clone()) };
    for (s, t) in &prepared.concrete_examples {
        let got = solution.run(s)?;
        if &got != t {
            diagnostics
                .notes
                .push(format!("minterms are too coarse: the lifted transducer maps {s:?} to {got:?}, expected {t:?}"));
            return Ok(Outcome::NoSolution);
        }
    }
    Ok(Outcome::Found(Box::new(solution)))
}

/// Synthesizes a transducer meeting `spec`, with lookahead when
/// `spec.lookahead` is set.
pub fn synthesize(spec: &SynthesisSpec, cfg: &SolverConfig) -> Result<SynthesisResult> {
    run_prepared(&prepare(spec)?, cfg, &AtomicBool::new(false))
}

/// Like [`synthesize`] but insists on a lookahead bound.
pub fn synthesize_with_lookahead(spec: &SynthesisSpec, cfg: &SolverConfig) -> Result<SynthesisResult> {
    if spec.lookahead.is_none() {
        return Err(Error::InvalidInput("a lookahead state bound is required".into()));
    }
    synthesize(spec, cfg)
}

/// Bounds explored by [`deepening_synthesize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deepening {
    pub k_max: usize,
    /// Upper bound on lookahead states; `None` stays plain.
    pub k_r_max: Option<usize>,
    /// Run every candidate concurrently; the first `Found` cancels the rest.
    pub portfolio: bool,
}

fn merge(results: Vec<SynthesisResult>) -> SynthesisResult {
    let mut diagnostics = Diagnostics::default();
    let mut found = None;
    let mut timed_out = false;
    for r in results {
        diagnostics.attempts.extend(r.diagnostics.attempts);
        diagnostics.notes.extend(r.diagnostics.notes);
        diagnostics.solver_time += r.diagnostics.solver_time;
        match r.outcome {
            Outcome::Found(s) if found.is_none() => {
                diagnostics.stats = r.diagnostics.stats;
                diagnostics.verified = r.diagnostics.verified;
                found = Some(s);
            }
            Outcome::Timeout => timed_out = true,
            _ => {}
        }
    }
    let outcome = match found {
        Some(s) => Outcome::Found(s),
        None if timed_out => Outcome::Timeout,
        None => Outcome::NoSolution,
    };
    SynthesisResult { outcome, diagnostics }
}

/// Tries `k = 1..=k_max` (and `k_r = 1..=k_r_max` for each `k`) in
/// lexicographic order. `spec.k` and `spec.lookahead` are ignored. The
/// sequential search returns the first bound with a solution; the
/// portfolio returns whichever verified solution arrives first.
pub fn deepening_synthesize(spec: &SynthesisSpec, bounds: Deepening, cfg: &SolverConfig) -> Result<SynthesisResult> {
    let base = prepare(&SynthesisSpec { k: 1, lookahead: bounds.k_r_max.map(|_| 1), ..spec.clone() })?;
    let candidates: Vec<(usize, Option<usize>)> = (1..=bounds.k_max)
        .flat_map(|k| match bounds.k_r_max {
            None => vec![(k, None)],
            Some(r) => (1..=r).map(|k_r| (k, Some(k_r))).collect(),
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::InvalidInput("k_max and k_r_max must be at least 1".into()));
    }
    let cancel = AtomicBool::new(false);
    if !bounds.portfolio {
        let mut results = Vec::new();
        for (k, k_r) in candidates {
            let r = run_prepared(&base.with_bounds(k, k_r), cfg, &cancel)?;
            let done = r.outcome.is_found();
            results.push(r);
            if done {
                break;
            }
        }
        return Ok(merge(results));
    }
    let collected: Mutex<Vec<(usize, Result<SynthesisResult>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for (i, &(k, k_r)) in candidates.iter().enumerate() {
            let (base, cfg, cancel, collected) = (&base, cfg, &cancel, &collected);
            scope.spawn(move || {
                let r = run_prepared(&base.with_bounds(k, k_r), cfg, cancel);
                let found = matches!(&r, Ok(r) if r.outcome.is_found());
                let mut slot = collected.lock().expect("no panics while holding the lock");
                // only the first verified solution counts
                let first = found && !cancel.swap(true, Ordering::SeqCst);
                let order = if first { 0 } else { i + 1 };
                let r = match r {
                    Ok(mut r) if found && !first => {
                        r.outcome = Outcome::Timeout;
                        r.diagnostics.notes.push(format!("k = {k}: solution discarded, another bound finished first"));
                        Ok(r)
                    }
                    other => other,
                };
                slot.push((order, r));
            });
        }
    });
    let mut collected = collected.into_inner().expect("threads joined");
    collected.sort_by_key(|(order, _)| *order);
    let results = collected.into_iter().map(|(_, r)| r).collect::<Result<Vec<_>>>()?;
    Ok(merge(results))
}
