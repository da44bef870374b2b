//! Repairing a transducer that violates its types or examples.
//!
//! [`repair_from_input`] re-synthesizes only on the inputs the faulty
//! machine gets wrong and keeps it elsewhere. [`repair_with_template`]
//! keeps the shape of the faulty machine, freeing just the transitions
//! that [`localize_faults`] flags.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Sym};
use crate::automata::{restrict_union, Dfa, DomainRestrictedFt, Ft};
use crate::driver::{
    finite_type, symbolic_type, synthesize, AlphabetSpec, DistanceBound, Outcome, PinnedTransition, SynthesisSpec,
    TypeSpec,
};
use crate::error::{Error, Result};
use crate::oracle::{bad_inputs, hoare_check, HoareVerdict};
use crate::smt::SolverConfig;
use crate::symbolic::{
    compute_minterms, finitize_sfa_with, finitize_sft_with, recover_sft, IntervalPred, MintermMap, Sfa, Sft,
};

/// The machine to repair.
#[derive(Debug, Clone)]
pub enum Faulty {
    Finite(Ft),
    Symbolic(Sft),
}

impl From<Ft> for Faulty {
    fn from(t: Ft) -> Self {
        Faulty::Finite(t)
    }
}

impl From<Sft> for Faulty {
    fn from(t: Sft) -> Self {
        Faulty::Symbolic(t)
    }
}

#[derive(Debug, Clone)]
pub struct RepairProblem {
    pub faulty: Faulty,
    pub examples: Vec<(String, String)>,
    pub types: Option<(TypeSpec, TypeSpec)>,
    /// States of the synthesized replacement; templates use at least as
    /// many as the faulty machine has.
    pub k: usize,
    pub l: usize,
    pub distance: Option<DistanceBound>,
    pub custom_minterms: Vec<IntervalPred>,
}

impl RepairProblem {
    pub fn new(faulty: impl Into<Faulty>, k: usize, l: usize) -> Self {
        RepairProblem {
            faulty: faulty.into(),
            examples: Vec::new(),
            types: None,
            k,
            l,
            distance: None,
            custom_minterms: Vec::new(),
        }
    }

    pub fn example(mut self, input: &str, output: &str) -> Self {
        self.examples.push((input.to_owned(), output.to_owned()));
        self
    }

    pub fn types(mut self, input: TypeSpec, output: TypeSpec) -> Self {
        self.types = Some((input, output));
        self
    }
}

#[derive(Debug, Clone)]
pub enum RepairOutcome {
    Repaired(DomainRestrictedFt),
    NoRepair,
    Timeout,
}

#[derive(Debug, Clone)]
pub struct RepairResult {
    pub outcome: RepairOutcome,
    /// Transitions flagged by localization, as (state, character).
    pub suspicious: BTreeSet<(usize, char)>,
    /// Present in symbolic mode; the repaired machine reads witnesses.
    pub minterms: Option<MintermMap>,
    /// Symbolic branches (transducer and domain) of the repaired machine.
    pub symbolic_branches: Option<Vec<(Sft, Sfa)>>,
    pub notes: Vec<String>,
}

impl RepairResult {
    pub fn repaired(&self) -> Option<&DomainRestrictedFt> {
        match &self.outcome {
            RepairOutcome::Repaired(t) => Some(t),
            _ => None,
        }
    }

    /// Runs the repaired machine on a concrete input; `None` outside its
    /// domain or when there is no repair.
    pub fn run(&self, w: &str) -> Result<Option<String>> {
        if let Some(branches) = &self.symbolic_branches {
            for (t, dom) in branches {
                if dom.accepts(w)? {
                    return t.run(w).map(Some);
                }
            }
            return Ok(None);
        }
        match self.repaired() {
            Some(t) => t.run(w),
            None => Ok(None),
        }
    }
}

/// Transitions used by failing examples but by no passing one. When every
/// such transition also serves a passing example, all transitions on
/// failing runs are returned instead. Empty when every example passes.
pub fn localize_faults(t: &Ft, examples: &[(String, String)]) -> Result<BTreeSet<(usize, Sym)>> {
    let alphabet = t.alphabet();
    let mut failing = BTreeSet::new();
    let mut passing = BTreeSet::new();
    for (s, expected) in examples {
        let w = alphabet.encode(s)?;
        let out = alphabet.decode(&t.run_syms(&w));
        let used = t.trace(&w);
        if &out == expected {
            passing.extend(used);
        } else {
            failing.extend(used);
        }
    }
    let only_failing: BTreeSet<_> = failing.difference(&passing).copied().collect();
    Ok(if only_failing.is_empty() { failing } else { only_failing })
}

/// A repair problem over a finite alphabet.
struct Lowered {
    faulty: Ft,
    examples: Vec<(String, String)>,
    types: Option<(Dfa, Dfa)>,
    minterms: Option<MintermMap>,
}

fn lower(problem: &RepairProblem) -> Result<Lowered> {
    match &problem.faulty {
        Faulty::Finite(t) => {
            let alphabet = t.alphabet();
            let types = match &problem.types {
                Some((p, q)) => Some((finite_type(p, alphabet)?, finite_type(q, alphabet)?)),
                None => None,
            };
            for (s, o) in &problem.examples {
                alphabet.encode(s)?;
                alphabet.encode(o)?;
            }
            Ok(Lowered { faulty: t.clone(), examples: problem.examples.clone(), types, minterms: None })
        }
        Faulty::Symbolic(sft) => {
            let universe = sft.universe();
            let sfas = match &problem.types {
                Some((p, q)) => Some((symbolic_type(p, universe)?, symbolic_type(q, universe)?)),
                None => None,
            };
            let mut preds = problem.custom_minterms.clone();
            preds.extend(sft.predicates());
            if let Some((p, q)) = &sfas {
                preds.extend(p.predicates());
                preds.extend(q.predicates());
            }
            let mm = compute_minterms(&preds, universe)?;
            let faulty = finitize_sft_with(sft, &mm)?;
            let types = match &sfas {
                Some((p, q)) => Some((finitize_sfa_with(p, &mm)?, finitize_sfa_with(q, &mm)?)),
                None => None,
            };
            let examples = problem
                .examples
                .iter()
                .map(|(s, o)| Ok((mm.to_witnesses(s)?, mm.to_witnesses(o)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Lowered { faulty, examples, types, minterms: Some(mm) })
        }
    }
}

fn sub_spec(
    problem: &RepairProblem,
    low: &Lowered,
    k: usize,
    examples: Vec<(String, String)>,
    p: Option<&Dfa>,
) -> SynthesisSpec {
    let mut spec = SynthesisSpec::new(low.faulty.alphabet().clone(), k, problem.l);
    spec.examples = examples;
    if let Some((dp, q)) = &low.types {
        spec.input_type = Some(TypeSpec::Dfa(p.unwrap_or(dp).clone()));
        spec.output_type = Some(TypeSpec::Dfa(q.clone()));
    }
    spec.distance = problem.distance;
    spec
}

fn chars_of(set: &BTreeSet<(usize, Sym)>, alphabet: &Alphabet, mm: Option<&MintermMap>) -> BTreeSet<(usize, char)> {
    set.iter().map(|&(q, a)| (q, mm.map(|m| m.witness(a)).unwrap_or_else(|| alphabet.char_of(a)))).collect()
}

/// Checks the repaired machine against the examples and the types, then
/// lifts it back in symbolic mode.
fn finish(
    problem: &RepairProblem,
    low: &Lowered,
    repaired: DomainRestrictedFt,
    suspicious: BTreeSet<(usize, char)>,
    mut notes: Vec<String>,
) -> Result<RepairResult> {
    for (s, o) in &low.examples {
        let got = repaired.run(s)?;
        if got.as_deref() != Some(o.as_str()) {
            return Err(Error::Soundness(format!("repaired machine maps {s:?} to {got:?}, expected {o:?}")));
        }
    }
    if let Some((_, q)) = &low.types {
        for (t, dom) in repaired.branches() {
            if let HoareVerdict::Counterexample(w) = hoare_check(dom, t, q)? {
                return Err(Error::Soundness(format!("repaired machine maps {w:?} outside the output type")));
            }
        }
    }
    let mut result = RepairResult {
        outcome: RepairOutcome::Repaired(repaired.clone()),
        suspicious,
        minterms: low.minterms.clone(),
        symbolic_branches: None,
        notes: Vec::new(),
    };
    if let (Some(mm), Faulty::Symbolic(original)) = (&low.minterms, &problem.faulty) {
        let mut branches = Vec::new();
        for (t, dom) in repaired.branches() {
            // the untouched branch keeps the caller's exact outputs
            let sft = if *t == low.faulty { original.clone() } else { recover_sft(t, mm)? };
            branches.push((sft, Sfa::from_finite(dom, mm)?));
        }
        result.symbolic_branches = Some(branches);
        for (s, o) in &problem.examples {
            let got = result.run(s)?;
            if got.as_deref() != Some(o.as_str()) {
                notes.push(format!("minterms are too coarse: the lifted repair maps {s:?} to {got:?}, expected {o:?}"));
                result.outcome = RepairOutcome::NoRepair;
                result.symbolic_branches = None;
                break;
            }
        }
    }
    result.notes = notes;
    Ok(result)
}

fn unrepaired(
    outcome: RepairOutcome,
    low: &Lowered,
    suspicious: BTreeSet<(usize, char)>,
    notes: Vec<String>,
) -> RepairResult {
    RepairResult { outcome, suspicious, minterms: low.minterms.clone(), symbolic_branches: None, notes }
}

/// Synthesizes a replacement on the inputs the faulty machine gets wrong:
/// those mapped outside the output type plus the inputs of failing
/// examples. Everywhere else in the input type the faulty machine is kept.
/// Requires types; every example input must lie in the input type.
pub fn repair_from_input(problem: &RepairProblem, cfg: &SolverConfig) -> Result<RepairResult> {
    let low = lower(problem)?;
    let Some((p, q)) = low.types.clone() else {
        return Err(Error::InvalidInput("repair from input needs input and output types".into()));
    };
    let alphabet = low.faulty.alphabet().clone();
    let mut failing = Vec::new();
    for (s, o) in &low.examples {
        if !p.accepts(s)? {
            return Err(Error::InvalidInput(format!("example input {s:?} is outside the input type")));
        }
        if low.faulty.run(s)? != *o {
            failing.push(alphabet.encode(s)?);
        }
    }
    let bad = bad_inputs(&p, &low.faulty, &q)?.union(&Dfa::from_words(alphabet.clone(), &failing))?.minimize();
    let suspicious = chars_of(&localize_faults(&low.faulty, &low.examples)?, &alphabet, low.minterms.as_ref());
    let keep = p.difference(&bad)?;
    if bad.is_empty() {
        let repaired = restrict_union(vec![(low.faulty.clone(), keep)])?;
        return finish(problem, &low, repaired, suspicious, vec!["the faulty machine already meets the spec".into()]);
    }
    let local: Vec<_> = low.examples.iter().filter(|(s, _)| bad.accepts(s).unwrap_or(false)).cloned().collect();
    let spec = sub_spec(problem, &low, problem.k, local, Some(&bad));
    let res = synthesize(&spec, cfg)?;
    let mut notes = res.diagnostics.notes;
    match res.outcome {
        Outcome::Found(sol) => {
            let fix = sol.ft().expect("plain synthesis").clone();
            let mut branches = vec![(fix, bad)];
            if !keep.is_empty() {
                branches.push((low.faulty.clone(), keep));
            }
            finish(problem, &low, restrict_union(branches)?, suspicious, notes)
        }
        Outcome::NoSolution => {
            notes.push("no replacement exists on the faulty inputs within the bounds".into());
            Ok(unrepaired(RepairOutcome::NoRepair, &low, suspicious, notes))
        }
        Outcome::Timeout => Ok(unrepaired(RepairOutcome::Timeout, &low, suspicious, notes)),
    }
}

/// Keeps every transition of the faulty machine except the suspicious ones
/// and synthesizes those against the examples, types and distance bound.
pub fn repair_with_template(problem: &RepairProblem, cfg: &SolverConfig) -> Result<RepairResult> {
    let low = lower(problem)?;
    let alphabet = low.faulty.alphabet().clone();
    let flagged = localize_faults(&low.faulty, &low.examples)?;
    let mut notes = Vec::new();
    let bad_types = match &low.types {
        Some((p, q)) => !hoare_check(p, &low.faulty, q)?.holds(),
        None => false,
    };
    let flagged = if flagged.is_empty() && bad_types {
        notes.push("examples pass but the types do not; every transition is freed".into());
        low.faulty.transitions().map(|t| (t.from, t.symbol)).collect()
    } else {
        flagged
    };
    let skip: Vec<(usize, Sym)> = flagged.iter().copied().collect();
    let suspicious = chars_of(&flagged, &alphabet, low.minterms.as_ref());
    let k = problem.k.max(low.faulty.num_states());
    let mut spec = sub_spec(problem, &low, k, low.examples.clone(), None);
    spec.alphabet = AlphabetSpec::Finite(alphabet.clone());
    spec.template = low
        .faulty
        .transitions()
        .filter(|t| !skip.contains(&(t.from, t.symbol)))
        .map(|t| PinnedTransition {
            from: t.from,
            on: alphabet.char_of(t.symbol),
            to: t.to,
            output: alphabet.decode(t.output),
        })
        .collect();
    let res = synthesize(&spec, cfg)?;
    notes.extend(res.diagnostics.notes);
    match res.outcome {
        Outcome::Found(sol) => {
            let fixed = sol.ft().expect("plain synthesis").clone();
            let domain = match &low.types {
                Some((p, _)) => p.clone(),
                None => Dfa::universal(alphabet),
            };
            finish(problem, &low, restrict_union(vec![(fixed, domain)])?, suspicious, notes)
        }
        Outcome::NoSolution => {
            notes.push("no completion of the template meets the spec".into());
            Ok(unrepaired(RepairOutcome::NoRepair, &low, suspicious, notes))
        }
        Outcome::Timeout => Ok(unrepaired(RepairOutcome::Timeout, &low, suspicious, notes)),
    }
}
