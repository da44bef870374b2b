//! JSON documents for specifications, automata and transducers.
//!
//! Characters are JSON strings; symbolic guards and universes are lists
//! of `[lo, hi]` code-point pairs.

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use transynth::symbolic::{IntervalPred, OutputFunc, Sfa, SfaTransition, Sft, SftTransition};
use transynth::{
    Alphabet, AlphabetSpec, Dfa, DistanceBound, DomainRestrictedFt, Ft, LookaheadFt, PinnedTransition, Rational,
    SolverConfig, SynthesisSpec, TypeSpec,
};

pub type IntervalsDoc = Vec<[u32; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetDoc {
    Chars(String),
    Intervals(IntervalsDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleDoc {
    #[serde(rename = "in")]
    pub input: String,
    #[serde(rename = "out")]
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TypeDoc {
    Regex(String),
    Dfa(DfaDoc),
    Sfa(SfaDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DistanceDoc {
    /// A rational such as `"1/2"` or `"1"`.
    Mean(String),
    Total(u64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SolverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timeout_sec: Option<f64>,
}

/// A synthesis (or repair) specification file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SpecDocument {
    pub alphabet: AlphabetDoc,
    pub k: usize,
    pub l: usize,
    #[serde(default)]
    pub examples: Vec<ExampleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_type: Option<TypeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_type: Option<TypeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lookahead_states: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub template: Vec<FtTransitionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub custom_minterms: Vec<IntervalsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaTransitionDoc {
    pub from: usize,
    /// Every character listed here moves to `to`.
    pub on: String,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDoc {
    /// Defaults to the surrounding specification's alphabet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    pub states: usize,
    pub init: usize,
    #[serde(default)]
    pub finals: Vec<usize>,
    pub transitions: Vec<DfaTransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SfaTransitionDoc {
    pub from: usize,
    pub guard: IntervalsDoc,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SfaDoc {
    pub universe: IntervalsDoc,
    pub states: usize,
    pub init: usize,
    #[serde(default)]
    pub finals: Vec<usize>,
    pub transitions: Vec<SfaTransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FtTransitionDoc {
    pub from: usize,
    pub on: String,
    pub out: String,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FtDoc {
    pub alphabet: String,
    pub states: usize,
    pub init: usize,
    pub transitions: Vec<FtTransitionDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fn", rename_all = "camelCase", deny_unknown_fields)]
pub enum OutputFuncDoc {
    Identity,
    Offset { by: i64 },
    Const { char: char },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftTransitionDoc {
    pub from: usize,
    pub on: IntervalsDoc,
    pub out: Vec<OutputFuncDoc>,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftDoc {
    pub universe: IntervalsDoc,
    pub states: usize,
    pub init: usize,
    pub transitions: Vec<SftTransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LookaheadTransitionDoc {
    pub from: usize,
    /// State of the lookahead automaton on the rest of the input.
    pub look: usize,
    pub on: String,
    pub out: String,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LookaheadDoc {
    pub alphabet: String,
    pub states: usize,
    pub init: usize,
    /// Runs over the reversed input; its finals are ignored.
    pub lookahead: DfaDoc,
    pub transitions: Vec<LookaheadTransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub transducer: FtDoc,
    pub domain: DfaDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicBranchDoc {
    pub transducer: SftDoc,
    pub domain: SfaDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictedDoc<B> {
    pub branches: Vec<B>,
}

/// Any automaton or transducer file, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Document {
    Dfa(DfaDoc),
    Sfa(SfaDoc),
    Ft(FtDoc),
    Sft(SftDoc),
    Lookahead(LookaheadDoc),
    Restricted(RestrictedDoc<BranchDoc>),
    RestrictedSymbolic(RestrictedDoc<SymbolicBranchDoc>),
}

/// A loaded document.
#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    Dfa(Dfa),
    Sfa(Sfa),
    Ft(Ft),
    Sft(Sft),
    Lookahead(LookaheadFt),
    Restricted(DomainRestrictedFt),
    RestrictedSymbolic(Vec<(Sft, Sfa)>),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Dfa(_) => "dfa",
            Loaded::Sfa(_) => "sfa",
            Loaded::Ft(_) => "ft",
            Loaded::Sft(_) => "sft",
            Loaded::Lookahead(_) => "lookahead",
            Loaded::Restricted(_) => "restricted",
            Loaded::RestrictedSymbolic(_) => "restrictedSymbolic",
        }
    }

    /// Runs a transducer; `None` outside a restricted domain.
    pub fn run(&self, w: &str) -> Result<Option<String>> {
        Ok(match self {
            Loaded::Ft(t) => Some(t.run(w)?),
            Loaded::Sft(t) => Some(t.run(w)?),
            Loaded::Lookahead(t) => Some(t.run(w)?),
            Loaded::Restricted(t) => t.run(w)?,
            Loaded::RestrictedSymbolic(branches) => {
                for (t, dom) in branches {
                    if dom.accepts(w)? {
                        return Ok(Some(t.run(w)?));
                    }
                }
                None
            }
            Loaded::Dfa(_) | Loaded::Sfa(_) => bail!("a {} is not a transducer", self.kind()),
        })
    }
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => bail!("expected exactly one character, got {s:?}"),
    }
}

fn alphabet_of(s: &str) -> Result<Alphabet> {
    Alphabet::from_str_chars(s).with_context(|| format!("alphabet {s:?}"))
}

pub fn intervals_to_pred(iv: &IntervalsDoc) -> Result<IntervalPred> {
    Ok(IntervalPred::new(iv.iter().map(|&[lo, hi]| (lo, hi)))?)
}

pub fn pred_to_intervals(p: &IntervalPred) -> IntervalsDoc {
    p.intervals().iter().map(|&(lo, hi)| [lo, hi]).collect()
}

fn encode_out(alphabet: &Alphabet, out: &str) -> Result<Vec<usize>> {
    alphabet.encode(out).with_context(|| format!("output {out:?}"))
}

impl DfaDoc {
    pub fn from_dfa(d: &Dfa, with_alphabet: bool) -> Self {
        let sigma = d.alphabet();
        let mut transitions = Vec::new();
        for q in 0..d.num_states() {
            let mut targets: Vec<(usize, String)> = Vec::new();
            for (a, c) in sigma.iter() {
                let to = d.step(q, a);
                match targets.iter_mut().find(|(t, _)| *t == to) {
                    Some((_, on)) => on.push(c),
                    None => targets.push((to, c.to_string())),
                }
            }
            transitions.extend(targets.into_iter().map(|(to, on)| DfaTransitionDoc { from: q, on, to }));
        }
        DfaDoc {
            alphabet: with_alphabet.then(|| sigma.symbols().iter().collect()),
            states: d.num_states(),
            init: d.init(),
            finals: d.finals().collect(),
            transitions,
        }
    }

    pub fn to_dfa(&self, fallback: Option<&Alphabet>) -> Result<Dfa> {
        let sigma = match (&self.alphabet, fallback) {
            (Some(s), _) => alphabet_of(s)?,
            (None, Some(a)) => a.clone(),
            (None, None) => bail!("DFA document needs an alphabet"),
        };
        ensure!(self.states > 0, "a DFA needs at least one state");
        let n = sigma.len();
        let mut delta = vec![usize::MAX; self.states * n];
        for t in &self.transitions {
            ensure!(t.from < self.states, "transition source {} out of range", t.from);
            for c in t.on.chars() {
                let a = sigma.index_of(c).ok_or_else(|| anyhow!("symbol {c:?} is not in the alphabet"))?;
                let slot = &mut delta[t.from * n + a];
                ensure!(*slot == usize::MAX, "state {} has two transitions on {c:?}", t.from);
                *slot = t.to;
            }
        }
        if let Some(i) = delta.iter().position(|&t| t == usize::MAX) {
            bail!("state {} has no transition on {:?}", i / n, sigma.char_of(i % n));
        }
        let mut finals = vec![false; self.states];
        for &f in &self.finals {
            ensure!(f < self.states, "final state {f} out of range");
            finals[f] = true;
        }
        Ok(Dfa::from_parts(sigma, self.init, finals, delta)?)
    }
}

impl SfaDoc {
    pub fn from_sfa(m: &Sfa) -> Self {
        SfaDoc {
            universe: pred_to_intervals(m.universe()),
            states: m.num_states(),
            init: m.init(),
            finals: (0..m.num_states()).filter(|&q| m.is_final(q)).collect(),
            transitions: m
                .transitions()
                .iter()
                .map(|t| SfaTransitionDoc { from: t.from, guard: pred_to_intervals(&t.guard), to: t.to })
                .collect(),
        }
    }

    pub fn to_sfa(&self) -> Result<Sfa> {
        let mut finals = vec![false; self.states];
        for &f in &self.finals {
            ensure!(f < self.states, "final state {f} out of range");
            finals[f] = true;
        }
        let transitions = self
            .transitions
            .iter()
            .map(|t| Ok(SfaTransition { from: t.from, guard: intervals_to_pred(&t.guard)?, to: t.to }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Sfa::new(intervals_to_pred(&self.universe)?, self.init, finals, transitions)?)
    }
}

impl FtDoc {
    pub fn from_ft(t: &Ft) -> Self {
        let sigma = t.alphabet();
        FtDoc {
            alphabet: sigma.symbols().iter().collect(),
            states: t.num_states(),
            init: t.init(),
            transitions: t
                .transitions()
                .map(|tr| FtTransitionDoc {
                    from: tr.from,
                    on: sigma.char_of(tr.symbol).to_string(),
                    out: sigma.decode(tr.output),
                    to: tr.to,
                })
                .collect(),
        }
    }

    pub fn to_ft(&self) -> Result<Ft> {
        let sigma = alphabet_of(&self.alphabet)?;
        let rows = self
            .transitions
            .iter()
            .map(|t| Ok((t.from, single_char(&t.on)?, t.out.as_str(), t.to)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ft::from_transitions(sigma, self.states, self.init, &rows)?)
    }
}

impl From<OutputFunc> for OutputFuncDoc {
    fn from(f: OutputFunc) -> Self {
        match f {
            OutputFunc::Identity => OutputFuncDoc::Identity,
            OutputFunc::Offset(by) => OutputFuncDoc::Offset { by },
            OutputFunc::Const(char) => OutputFuncDoc::Const { char },
        }
    }
}

impl From<OutputFuncDoc> for OutputFunc {
    fn from(f: OutputFuncDoc) -> Self {
        match f {
            OutputFuncDoc::Identity => OutputFunc::Identity,
            OutputFuncDoc::Offset { by } => OutputFunc::Offset(by),
            OutputFuncDoc::Const { char } => OutputFunc::Const(char),
        }
    }
}

impl SftDoc {
    pub fn from_sft(m: &Sft) -> Self {
        SftDoc {
            universe: pred_to_intervals(m.universe()),
            states: m.num_states(),
            init: m.init(),
            transitions: m
                .transitions()
                .iter()
                .map(|t| SftTransitionDoc {
                    from: t.from,
                    on: pred_to_intervals(&t.guard),
                    out: t.outputs.iter().map(|&f| f.into()).collect(),
                    to: t.to,
                })
                .collect(),
        }
    }

    pub fn to_sft(&self) -> Result<Sft> {
        let transitions = self
            .transitions
            .iter()
            .map(|t| {
                Ok(SftTransition {
                    from: t.from,
                    guard: intervals_to_pred(&t.on)?,
                    outputs: t.out.iter().map(|&f| f.into()).collect(),
                    to: t.to,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sft::new(intervals_to_pred(&self.universe)?, self.states, self.init, transitions)?)
    }
}

impl LookaheadDoc {
    pub fn from_lookahead(t: &LookaheadFt) -> Self {
        let sigma = t.alphabet();
        let r = t.lookahead();
        let mut transitions = Vec::new();
        for q in 0..t.num_states() {
            for rho in 0..r.num_states() {
                for (a, c) in sigma.iter() {
                    transitions.push(LookaheadTransitionDoc {
                        from: q,
                        look: rho,
                        on: c.to_string(),
                        out: sigma.decode(t.output(q, rho, a)),
                        to: t.step(q, rho, a),
                    });
                }
            }
        }
        LookaheadDoc {
            alphabet: sigma.symbols().iter().collect(),
            states: t.num_states(),
            init: t.init(),
            lookahead: DfaDoc::from_dfa(r, false),
            transitions,
        }
    }

    pub fn to_lookahead(&self) -> Result<LookaheadFt> {
        let sigma = alphabet_of(&self.alphabet)?;
        let r = self.lookahead.to_dfa(Some(&sigma))?;
        let (n, k_r) = (sigma.len(), r.num_states());
        let width = k_r * n;
        let mut next = vec![usize::MAX; self.states * width];
        let mut out = vec![Vec::new(); self.states * width];
        for t in &self.transitions {
            ensure!(t.from < self.states && t.look < k_r, "transition ({}, {}) out of range", t.from, t.look);
            let c = single_char(&t.on)?;
            let a = sigma.index_of(c).ok_or_else(|| anyhow!("symbol {c:?} is not in the alphabet"))?;
            let i = t.from * width + t.look * n + a;
            ensure!(next[i] == usize::MAX, "duplicate transition ({}, {}, {c:?})", t.from, t.look);
            next[i] = t.to;
            out[i] = encode_out(&sigma, &t.out)?;
        }
        if let Some(i) = next.iter().position(|&t| t == usize::MAX) {
            bail!("missing transition ({}, {}, {:?})", i / width, (i % width) / n, sigma.char_of(i % n));
        }
        Ok(LookaheadFt::from_parts(r, self.init, next, out)?)
    }
}

impl Document {
    pub fn from_machine(m: &Loaded) -> Self {
        match m {
            Loaded::Dfa(d) => Document::Dfa(DfaDoc::from_dfa(d, true)),
            Loaded::Sfa(d) => Document::Sfa(SfaDoc::from_sfa(d)),
            Loaded::Ft(t) => Document::Ft(FtDoc::from_ft(t)),
            Loaded::Sft(t) => Document::Sft(SftDoc::from_sft(t)),
            Loaded::Lookahead(t) => Document::Lookahead(LookaheadDoc::from_lookahead(t)),
            Loaded::Restricted(t) => Document::Restricted(RestrictedDoc {
                branches: t
                    .branches()
                    .iter()
                    .map(|(t, d)| BranchDoc { transducer: FtDoc::from_ft(t), domain: DfaDoc::from_dfa(d, true) })
                    .collect(),
            }),
            Loaded::RestrictedSymbolic(branches) => Document::RestrictedSymbolic(RestrictedDoc {
                branches: branches
                    .iter()
                    .map(|(t, d)| SymbolicBranchDoc { transducer: SftDoc::from_sft(t), domain: SfaDoc::from_sfa(d) })
                    .collect(),
            }),
        }
    }

    /// Validates and builds the machine; totality and determinism are
    /// checked here.
    pub fn load(&self) -> Result<Loaded> {
        Ok(match self {
            Document::Dfa(d) => Loaded::Dfa(d.to_dfa(None)?),
            Document::Sfa(d) => Loaded::Sfa(d.to_sfa()?),
            Document::Ft(d) => Loaded::Ft(d.to_ft()?),
            Document::Sft(d) => Loaded::Sft(d.to_sft()?),
            Document::Lookahead(d) => Loaded::Lookahead(d.to_lookahead()?),
            Document::Restricted(r) => {
                let branches = r
                    .branches
                    .iter()
                    .map(|b| {
                        let t = b.transducer.to_ft()?;
                        let d = b.domain.to_dfa(Some(t.alphabet()))?;
                        Ok((t, d))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Loaded::Restricted(DomainRestrictedFt::new(branches)?)
            }
            Document::RestrictedSymbolic(r) => {
                ensure!(!r.branches.is_empty(), "at least one branch is required");
                let branches = r
                    .branches
                    .iter()
                    .map(|b| Ok((b.transducer.to_sft()?, b.domain.to_sfa()?)))
                    .collect::<Result<Vec<_>>>()?;
                Loaded::RestrictedSymbolic(branches)
            }
        })
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let r: Rational = s.trim().parse().map_err(|e| anyhow!("distance {s:?} is not a rational: {e:?}"))?;
    Ok(r)
}

pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl TypeDoc {
    fn to_type(&self, alphabet: Option<&Alphabet>) -> Result<TypeSpec> {
        Ok(match self {
            TypeDoc::Regex(src) => TypeSpec::Regex(src.clone()),
            TypeDoc::Dfa(d) => TypeSpec::Dfa(d.to_dfa(alphabet)?),
            TypeDoc::Sfa(d) => TypeSpec::Sfa(d.to_sfa()?),
        })
    }
}

impl SpecDocument {
    pub fn finite_alphabet(&self) -> Option<Result<Alphabet>> {
        match &self.alphabet {
            AlphabetDoc::Chars(s) => Some(alphabet_of(s)),
            AlphabetDoc::Intervals(_) => None,
        }
    }

    pub fn types(&self) -> Result<Option<(TypeSpec, TypeSpec)>> {
        let alphabet = self.finite_alphabet().transpose()?;
        match (&self.input_type, &self.output_type) {
            (Some(p), Some(q)) => Ok(Some((p.to_type(alphabet.as_ref())?, q.to_type(alphabet.as_ref())?))),
            (None, None) => Ok(None),
            _ => bail!("inputType and outputType must be given together"),
        }
    }

    pub fn distance_bound(&self) -> Result<Option<DistanceBound>> {
        Ok(match &self.distance {
            None => None,
            Some(DistanceDoc::Mean(s)) => Some(DistanceBound::Mean(parse_rational(s)?)),
            Some(DistanceDoc::Total(n)) => Some(DistanceBound::Total(*n)),
        })
    }

    pub fn examples(&self) -> Vec<(String, String)> {
        self.examples.iter().map(|e| (e.input.clone(), e.output.clone())).collect()
    }

    pub fn custom_minterms(&self) -> Result<Vec<IntervalPred>> {
        self.custom_minterms.iter().map(intervals_to_pred).collect()
    }

    pub fn to_spec(&self) -> Result<SynthesisSpec> {
        let alphabet = match &self.alphabet {
            AlphabetDoc::Chars(s) => AlphabetSpec::Finite(alphabet_of(s)?),
            AlphabetDoc::Intervals(iv) => AlphabetSpec::Symbolic(intervals_to_pred(iv)?),
        };
        let (input_type, output_type) = match self.types()? {
            Some((p, q)) => (Some(p), Some(q)),
            None => (None, None),
        };
        let template = self
            .template
            .iter()
            .map(|t| Ok(PinnedTransition { from: t.from, on: single_char(&t.on)?, to: t.to, output: t.out.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(SynthesisSpec {
            alphabet,
            k: self.k,
            l: self.l,
            examples: self.examples(),
            input_type,
            output_type,
            distance: self.distance_bound()?,
            lookahead: self.lookahead_states,
            template,
            custom_minterms: self.custom_minterms()?,
        })
    }

    /// Solver settings: the document's, over the defaults (which honour the
    /// solver environment variable).
    pub fn solver_config(&self) -> Result<SolverConfig> {
        let mut cfg = SolverConfig::default();
        if let Some(s) = &self.solver {
            if let Some(p) = &s.path {
                cfg.path = p.into();
            }
            if let Some(a) = &s.args {
                cfg.args = a.clone();
            }
            if let Some(t) = s.timeout_sec {
                ensure!(t.is_finite() && t > 0.0, "timeoutSec must be positive");
                cfg.timeout = std::time::Duration::from_secs_f64(t);
            }
        }
        Ok(cfg)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
