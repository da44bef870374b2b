//! Subcommands. Each returns its exit code; errors are mapped by
//! [`exit_code`].

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use transynth::driver::prepare;
use transynth::oracle::{
    check_mean_aggregate, check_mean_aggregate_lookahead, check_total_aggregate, check_total_aggregate_lookahead,
    find_distinguishing_input, hoare_check, hoare_check_lookahead, CostVerdict, HoareVerdict,
};
use transynth::smt::emit_smtlib;
use transynth::symbolic::{compute_minterms, finitize_sfa, finitize_sfa_with, finitize_sft, finitize_sft_with};
use transynth::{
    deepening_synthesize, repair_from_input, repair_with_template, synthesize, Deepening, Dfa, DistanceBound,
    DomainRestrictedFt, Error, Faulty, Ft, LookaheadFt, Outcome, RepairOutcome, RepairProblem, SolverConfig,
    SynthesisResult, SynthesisSpec,
};

use crate::doc::{format_rational, read_json, write_json, Document, Loaded, SpecDocument};

pub mod exit {
    pub const FOUND: u8 = 0;
    pub const NO_SOLUTION: u8 = 1;
    pub const TIMEOUT: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const SOFTWARE: u8 = 70;
}

/// Soundness and solver-protocol failures are internal errors; everything
/// else (bad files, missing solver, foreign symbols) is a usage error.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Soundness(_) | Error::Decode(_) | Error::SolverOutput(_)) => exit::SOFTWARE,
        _ => exit::USAGE,
    }
}

pub fn load_machine(path: &Path) -> Result<Loaded> {
    let doc: Document = read_json(path)?;
    doc.load().with_context(|| format!("loading {}", path.display()))
}

fn load_spec(path: &Path) -> Result<(SpecDocument, SynthesisSpec)> {
    let doc: SpecDocument = read_json(path)?;
    let spec = doc.to_spec().with_context(|| format!("in {}", path.display()))?;
    Ok((doc, spec))
}

/// Solver overrides given on the command line.
#[derive(Debug, Clone, Default)]
pub struct SolverFlags {
    pub solver: Option<PathBuf>,
    pub timeout_sec: Option<f64>,
}

fn solver_config(doc: &SpecDocument, flags: &SolverFlags) -> Result<SolverConfig> {
    let mut cfg = doc.solver_config()?;
    if let Some(p) = &flags.solver {
        cfg.path = p.clone();
    }
    if let Some(t) = flags.timeout_sec {
        if !(t.is_finite() && t > 0.0) {
            bail!("--timeout must be positive");
        }
        cfg.timeout = Duration::from_secs_f64(t);
    }
    if !cfg.is_available() {
        return Err(Error::SolverLaunch(format!(
            "{} cannot be started; install z3 or set {}",
            cfg.path.display(),
            transynth::smt::SOLVER_ENV
        ))
        .into());
    }
    Ok(cfg)
}

#[derive(Debug, Clone, Default)]
pub struct SynthOptions {
    pub spec: PathBuf,
    pub k_max: Option<usize>,
    pub lookahead: Option<usize>,
    pub portfolio: bool,
    pub out: Option<PathBuf>,
    pub emit_smt: bool,
    pub stats: bool,
    pub json: bool,
    pub solver: SolverFlags,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AttemptReport {
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_r: Option<usize>,
    verdict: &'static str,
    solver_ms: u128,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FamilyReport {
    family: String,
    instances: usize,
    emitted: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SynthReport {
    outcome: &'static str,
    solver_ms: u128,
    attempts: Vec<AttemptReport>,
    verified: Vec<String>,
    notes: Vec<String>,
    stats: Vec<FamilyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transducer: Option<Document>,
}

/// The artifact written for a solution: the lifted symbolic transducer in
/// symbolic mode, otherwise the decoded machine.
fn solution_document(res: &SynthesisResult) -> Option<Document> {
    let sol = res.outcome.solution()?;
    let loaded = match (&sol.sft, &sol.machine) {
        (Some(sft), _) => Loaded::Sft(sft.clone()),
        (None, transynth::Machine::Plain(t)) => Loaded::Ft(t.clone()),
        (None, transynth::Machine::Lookahead(t)) => Loaded::Lookahead(t.clone()),
    };
    Some(Document::from_machine(&loaded))
}

fn outcome_code(o: &Outcome) -> u8 {
    match o {
        Outcome::Found(_) => exit::FOUND,
        Outcome::NoSolution => exit::NO_SOLUTION,
        Outcome::Timeout => exit::TIMEOUT,
    }
}

fn smt_path(opts: &SynthOptions) -> PathBuf {
    opts.out.as_ref().unwrap_or(&opts.spec).with_extension("smt2")
}

pub fn cmd_synth(opts: &SynthOptions, out: &mut dyn Write) -> Result<u8> {
    let (doc, mut spec) = load_spec(&opts.spec)?;
    if opts.lookahead.is_some() {
        spec.lookahead = opts.lookahead;
    }
    let cfg = solver_config(&doc, &opts.solver)?;
    let res = match opts.k_max {
        Some(k_max) => {
            deepening_synthesize(&spec, Deepening { k_max, k_r_max: spec.lookahead, portfolio: opts.portfolio }, &cfg)?
        }
        None => synthesize(&spec, &cfg)?,
    };

    if opts.emit_smt {
        // the document of the returned size, or of the last size tried
        let last =
            res.diagnostics.attempts.iter().rev().find(|a| a.verdict == "found").or(res.diagnostics.attempts.last());
        let (k, k_r) = last.map_or((spec.k, spec.lookahead), |a| (a.k, a.k_r));
        let prepared = prepare(&SynthesisSpec { k, lookahead: k_r, ..spec.clone() })?;
        let path = smt_path(opts);
        std::fs::write(&path, emit_smtlib(&prepared.encode()?, &cfg.logic))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let artifact = solution_document(&res);
    if let (Some(path), Some(doc)) = (&opts.out, &artifact) {
        write_json(path, doc)?;
    }
    let d = &res.diagnostics;
    if opts.json {
        let report = SynthReport {
            outcome: res.outcome.label(),
            solver_ms: d.solver_time.as_millis(),
            attempts: d
                .attempts
                .iter()
                .map(|a| AttemptReport { k: a.k, k_r: a.k_r, verdict: a.verdict, solver_ms: a.solver_time.as_millis() })
                .collect(),
            verified: d.verified.clone(),
            notes: d.notes.clone(),
            stats: d
                .stats
                .iter()
                .flat_map(|s| {
                    s.instances.iter().map(|(f, &n)| FamilyReport {
                        family: f.to_string(),
                        instances: n,
                        emitted: s.emitted(*f),
                    })
                })
                .collect(),
            transducer: artifact,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        return Ok(outcome_code(&res.outcome));
    }

    writeln!(out, "verdict: {}", res.outcome.label())?;
    for a in &d.attempts {
        let k_r = a.k_r.map_or(String::new(), |r| format!(" kR={r}"));
        writeln!(out, "  k={}{k_r}: {} ({:.3}s)", a.k, a.verdict, a.solver_time.as_secs_f64())?;
    }
    for v in &d.verified {
        writeln!(out, "  verified: {v}")?;
    }
    for n in &d.notes {
        writeln!(out, "  note: {n}")?;
    }
    if opts.stats {
        writeln!(out, "solver time: {:.3}s", d.solver_time.as_secs_f64())?;
        if let Some(s) = &d.stats {
            write!(out, "{s}")?;
        }
    }
    if let Some(doc) = &artifact {
        match &opts.out {
            Some(p) => writeln!(out, "wrote {}", p.display())?,
            None => writeln!(out, "{}", serde_json::to_string_pretty(doc)?)?,
        }
    }
    Ok(outcome_code(&res.outcome))
}

/// A transducer lowered to the finite alphabet of a prepared spec.
enum Subject {
    Plain(Ft),
    Look(LookaheadFt),
    Restricted(DomainRestrictedFt),
}

fn lower_for_check(machine: &Loaded, mut spec: SynthesisSpec) -> Result<(Subject, transynth::driver::Prepared)> {
    match machine {
        Loaded::Sft(t) => spec.custom_minterms.extend(t.predicates()),
        Loaded::RestrictedSymbolic(branches) => {
            for (t, d) in branches {
                spec.custom_minterms.extend(t.predicates());
                spec.custom_minterms.extend(d.predicates());
            }
        }
        _ => {}
    }
    let prepared = prepare(&spec)?;
    let same = |a: &transynth::Alphabet| {
        if *a == prepared.alphabet {
            Ok(())
        } else {
            Err(anyhow!("the transducer's alphabet differs from the specification's"))
        }
    };
    let mm = prepared.minterms.as_ref();
    let symbolic_only = || anyhow!("a symbolic transducer needs a specification with an interval alphabet");
    let subject = match machine {
        Loaded::Ft(t) if mm.is_none() => {
            same(t.alphabet())?;
            Subject::Plain(t.clone())
        }
        Loaded::Lookahead(t) if mm.is_none() => {
            same(t.alphabet())?;
            Subject::Look(t.clone())
        }
        Loaded::Restricted(t) if mm.is_none() => {
            same(t.branches()[0].0.alphabet())?;
            Subject::Restricted(t.clone())
        }
        Loaded::Sft(t) => Subject::Plain(finitize_sft_with(t, mm.ok_or_else(symbolic_only)?)?),
        Loaded::RestrictedSymbolic(branches) => {
            let mm = mm.ok_or_else(symbolic_only)?;
            let lowered = branches
                .iter()
                .map(|(t, d)| Ok((finitize_sft_with(t, mm)?, finitize_sfa_with(d, mm)?)))
                .collect::<Result<Vec<_>>>()?;
            Subject::Restricted(DomainRestrictedFt::new(lowered)?)
        }
        Loaded::Dfa(_) | Loaded::Sfa(_) => bail!("a {} is not a transducer", machine.kind()),
        _ => bail!("a finite transducer needs a specification with a character alphabet"),
    };
    Ok((subject, prepared))
}

fn describe_hoare(v: HoareVerdict) -> Option<String> {
    match v {
        HoareVerdict::Holds => None,
        HoareVerdict::Counterexample(w) => Some(format!("input {w:?} is mapped outside the output type")),
    }
}

fn describe_cost(v: CostVerdict) -> Option<String> {
    match v {
        CostVerdict::Within => None,
        CostVerdict::Exceeds { witness, .. } => Some(format!("input {witness:?} exceeds the bound")),
    }
}

fn cost_of(p: &Dfa, t: &Ft, bound: DistanceBound) -> Result<Option<String>> {
    Ok(describe_cost(match bound {
        DistanceBound::Mean(d) => check_mean_aggregate(p, t, d)?,
        DistanceBound::Total(b) => check_total_aggregate(p, t, b)?,
    }))
}

pub fn cmd_check(transducer: &Path, spec_path: &Path, out: &mut dyn Write) -> Result<u8> {
    let machine = load_machine(transducer)?;
    let (_, spec) = load_spec(spec_path)?;
    let (subject, prepared) = lower_for_check(&machine, spec)?;
    let mut all_ok = true;
    let mut report = |out: &mut dyn Write, name: &str, failure: Option<String>| -> Result<()> {
        match failure {
            None => writeln!(out, "{name}: ok")?,
            Some(why) => {
                all_ok = false;
                writeln!(out, "{name}: FAIL ({why})")?;
            }
        }
        Ok(())
    };

    let mut bad_example = None;
    for (s, t) in &prepared.concrete_examples {
        let got = machine.run(s)?;
        if got.as_deref() != Some(t.as_str()) {
            let got = got.map_or("undefined".to_owned(), |g| format!("{g:?}"));
            bad_example = Some(format!("{s:?} gives {got}, expected {t:?}"));
            break;
        }
    }
    report(out, &format!("examples ({})", prepared.concrete_examples.len()), bad_example)?;

    let p = prepared.input_type();
    match &prepared.types {
        None => writeln!(out, "types: none given")?,
        Some((p, q)) => {
            let failure = match &subject {
                Subject::Plain(t) => describe_hoare(hoare_check(p, t, q)?),
                Subject::Look(t) => describe_hoare(hoare_check_lookahead(p, t, q)?),
                Subject::Restricted(t) => match p.difference(&t.domain())?.witness() {
                    Some(w) => Some(format!("input {w:?} is outside the domain")),
                    None => {
                        let mut first = None;
                        for (b, dom) in t.branches() {
                            first = describe_hoare(hoare_check(&p.intersect(dom)?, b, q)?);
                            if first.is_some() {
                                break;
                            }
                        }
                        first
                    }
                },
            };
            report(out, "types", failure)?;
        }
    }

    match prepared.distance {
        None => writeln!(out, "distance: none given")?,
        Some(bound) => {
            let failure = match &subject {
                Subject::Plain(t) => cost_of(&p, t, bound)?,
                Subject::Look(t) => describe_cost(match bound {
                    DistanceBound::Mean(d) => check_mean_aggregate_lookahead(&p, t, d)?,
                    DistanceBound::Total(b) => check_total_aggregate_lookahead(&p, t, b)?,
                }),
                Subject::Restricted(t) => {
                    let mut first = None;
                    for (b, dom) in t.branches() {
                        first = cost_of(&p.intersect(dom)?, b, bound)?;
                        if first.is_some() {
                            break;
                        }
                    }
                    first
                }
            };
            let label = match bound {
                DistanceBound::Mean(d) => format!("distance (mean {})", format_rational(d)),
                DistanceBound::Total(b) => format!("distance (total {b})"),
            };
            report(out, &label, failure)?;
        }
    }
    writeln!(out, "verdict: {}", if all_ok { "pass" } else { "fail" })?;
    Ok(if all_ok { exit::FOUND } else { exit::NO_SOLUTION })
}

/// Runs `transducer` on each word, or on each line of `input` when no words
/// are given.
pub fn cmd_run(transducer: &Path, words: &[String], input: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8> {
    let machine = load_machine(transducer)?;
    let mut emit = |w: &str| -> Result<()> {
        match machine.run(w)? {
            Some(o) => writeln!(out, "{o}")?,
            None => writeln!(out, "undefined: {w:?} is outside the domain")?,
        }
        Ok(())
    };
    if words.is_empty() {
        for line in input.lines() {
            emit(&line?)?;
        }
    } else {
        for w in words {
            emit(w)?;
        }
    }
    Ok(exit::FOUND)
}

/// Where `diff` looks for differences.
#[derive(Debug, Clone, Default)]
pub enum DiffDomain {
    #[default]
    Everything,
    Regex(String),
    Spec(PathBuf),
}

pub fn cmd_diff(left: &Path, right: &Path, domain: &DiffDomain, out: &mut dyn Write) -> Result<u8> {
    let (a, b) = (load_machine(left)?, load_machine(right)?);
    let (t1, t2, p): (Ft, Ft, Dfa) = match (&a, &b) {
        (Loaded::Ft(t1), Loaded::Ft(t2)) => {
            if t1.alphabet() != t2.alphabet() {
                bail!("the transducers have different alphabets");
            }
            let p = match domain {
                DiffDomain::Everything => Dfa::universal(t1.alphabet().clone()),
                DiffDomain::Regex(src) => transynth::compile_regex(src, t1.alphabet())?,
                DiffDomain::Spec(path) => {
                    let (_, spec) = load_spec(path)?;
                    let prepared = prepare(&spec)?;
                    if prepared.alphabet != *t1.alphabet() {
                        bail!("the specification's alphabet differs from the transducers'");
                    }
                    prepared.input_type()
                }
            };
            (t1.clone(), t2.clone(), p)
        }
        (Loaded::Sft(s1), Loaded::Sft(s2)) => {
            if s1.universe() != s2.universe() {
                bail!("the transducers have different universes");
            }
            let mut preds = s1.predicates();
            preds.extend(s2.predicates());
            let (mm, p) = match domain {
                DiffDomain::Everything => {
                    let mm = compute_minterms(&preds, s1.universe())?;
                    let p = Dfa::universal(mm.alphabet().clone());
                    (mm, p)
                }
                DiffDomain::Regex(_) => bail!("symbolic transducers take their input type from --spec"),
                DiffDomain::Spec(path) => {
                    let (_, mut spec) = load_spec(path)?;
                    spec.custom_minterms.extend(preds);
                    let prepared = prepare(&spec)?;
                    let mm = prepared.minterms.clone().ok_or_else(|| anyhow!("the specification is not symbolic"))?;
                    (mm, prepared.input_type())
                }
            };
            (finitize_sft_with(s1, &mm)?, finitize_sft_with(s2, &mm)?, p)
        }
        _ => bail!("diff compares two ft or two sft documents, got {} and {}", a.kind(), b.kind()),
    };
    match find_distinguishing_input(&t1, &t2, &p)? {
        None => {
            writeln!(out, "equivalent")?;
            Ok(exit::FOUND)
        }
        Some(w) => {
            // witnesses are concrete characters, so symbolic machines run on them
            let (o1, o2) = (a.run(&w)?.unwrap_or_default(), b.run(&w)?.unwrap_or_default());
            writeln!(out, "differ on {w:?}: {o1:?} vs {o2:?}")?;
            Ok(exit::NO_SOLUTION)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairMethod {
    Template,
    Input,
}

#[derive(Debug, Clone)]
pub struct RepairOptions {
    pub transducer: PathBuf,
    pub spec: PathBuf,
    /// Defaults to the template method when examples are given.
    pub method: Option<RepairMethod>,
    pub out: Option<PathBuf>,
    pub solver: SolverFlags,
}

pub fn cmd_repair(opts: &RepairOptions, out: &mut dyn Write) -> Result<u8> {
    let faulty = match load_machine(&opts.transducer)? {
        Loaded::Ft(t) => Faulty::Finite(t),
        Loaded::Sft(t) => Faulty::Symbolic(t),
        other => bail!("only ft and sft documents can be repaired, got {}", other.kind()),
    };
    let doc: SpecDocument = read_json(&opts.spec)?;
    let problem = RepairProblem {
        faulty,
        examples: doc.examples(),
        types: doc.types()?,
        k: doc.k,
        l: doc.l,
        distance: doc.distance_bound()?,
        custom_minterms: doc.custom_minterms()?,
    };
    let method =
        opts.method.unwrap_or(if problem.examples.is_empty() { RepairMethod::Input } else { RepairMethod::Template });
    let cfg = solver_config(&doc, &opts.solver)?;
    let res = match method {
        RepairMethod::Template => repair_with_template(&problem, &cfg)?,
        RepairMethod::Input => repair_from_input(&problem, &cfg)?,
    };
    let suspicious: Vec<String> = res.suspicious.iter().map(|(q, c)| format!("({q}, {c:?})")).collect();
    writeln!(out, "suspicious: {}", if suspicious.is_empty() { "none".to_owned() } else { suspicious.join(" ") })?;
    for n in &res.notes {
        writeln!(out, "note: {n}")?;
    }
    let (label, code) = match &res.outcome {
        RepairOutcome::Repaired(_) => ("repaired", exit::FOUND),
        RepairOutcome::NoRepair => ("no-repair", exit::NO_SOLUTION),
        RepairOutcome::Timeout => ("timeout", exit::TIMEOUT),
    };
    writeln!(out, "verdict: {label}")?;
    let artifact = match (&res.symbolic_branches, res.repaired()) {
        (Some(branches), Some(_)) => Some(Loaded::RestrictedSymbolic(branches.clone())),
        (None, Some(t)) => Some(Loaded::Restricted(t.clone())),
        _ => None,
    };
    if let Some(m) = artifact {
        let doc = Document::from_machine(&m);
        match &opts.out {
            Some(p) => {
                write_json(p, &doc)?;
                writeln!(out, "wrote {}", p.display())?;
            }
            None => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
        }
    }
    Ok(code)
}

pub fn cmd_finitize(path: &Path, out_path: Option<&Path>, out: &mut dyn Write) -> Result<u8> {
    let (finite, mm) = match load_machine(path)? {
        Loaded::Sft(t) => {
            let (ft, mm) = finitize_sft(&t)?;
            (Loaded::Ft(ft), mm)
        }
        Loaded::Sfa(m) => {
            let (dfa, mm) = finitize_sfa(&m)?;
            (Loaded::Dfa(dfa), mm)
        }
        other => bail!("finitize expects an sft or sfa document, got {}", other.kind()),
    };
    writeln!(out, "minterms: {}", mm.len())?;
    for (i, (pred, w)) in mm.minterms().iter().enumerate() {
        writeln!(out, "  {i}: {pred} witness {w:?}")?;
    }
    let doc = Document::from_machine(&finite);
    match out_path {
        Some(p) => {
            write_json(p, &doc)?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
    }
    Ok(exit::FOUND)
}
