//! Acceptance suite. Prints one `PASS` or `FAIL` line per criterion and
//! exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{ensure, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use transynth::encoder::{declare_transducer_vars, Family};
use transynth::fixtures::*;
use transynth::oracle::{check_mean_aggregate, edit_distance, hoare_check, mean_edit_distance};
use transynth::random::{letters, planted_instance, random_accepted_word, random_ft, random_minterms, random_word};
use transynth::symbolic::{finitize_sft, finitize_sft_with, recover_sft, IntervalPred};
use transynth::*;
use transynth_cli::commands::{cmd_diff, cmd_synth, DiffDomain, SynthOptions};
use transynth_cli::doc::read_json;
use transynth_cli::{Document, Loaded};

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn within(start: Instant, budget: Duration) -> Result<Duration> {
    let took = start.elapsed();
    ensure!(took <= budget, "took {took:?}, budget {budget:?}");
    Ok(took)
}

/// Quote escaping written directly over strings.
fn reference_escape(w: &str) -> String {
    let mut out = String::new();
    let mut after_backslash = false;
    for c in w.chars() {
        if c == '"' && !after_backslash {
            out.push('\\');
        }
        out.push(c);
        after_backslash = c == '\\' && !after_backslash;
    }
    out
}

fn synth_to_file(spec: &Path, out: &Path) -> Result<u8> {
    let opts = SynthOptions { spec: spec.to_owned(), out: Some(out.to_owned()), ..Default::default() };
    cmd_synth(&opts, &mut std::io::sink())
}

fn load_ft(path: &Path) -> Result<Ft> {
    let doc: Document = read_json(path)?;
    match doc.load()? {
        Loaded::Ft(t) => Ok(t),
        other => anyhow::bail!("expected an ft document, got {}", other.kind()),
    }
}

fn c1_escape_quotes() -> Result<String> {
    let start = Instant::now();
    let dir = TempDir::new()?;
    let out = dir.path().join("escape.json");
    ensure!(synth_to_file(&specs().join("escape.json"), &out)? == 0, "synth did not return Found");
    let took = within(start, Duration::from_secs(60))?;
    let t = load_ft(&out)?;
    let (p, _) = escape_types();
    let sigma = escape_alphabet();
    let mut checked = 0;
    for w in sigma.words_up_to(8).into_iter().filter(|w| p.accepts_syms(w)) {
        let s = sigma.decode(&w);
        ensure!(t.run(&s)? == reference_escape(&s), "differs on {s:?}");
        checked += 1;
    }
    ensure!(checked > 1000, "only {checked} inputs enumerated");
    Ok(format!("{checked} inputs of length <= 8 agree, {took:.2?} of 60s"))
}

/// Runs a lookahead transducer with the lookahead automaton read over the
/// reversed suffix: `look[n-1] = init`, `look[i] = step(look[i+1], a[i+1])`.
fn run_reversed_suffix(t: &LookaheadFt, w: &[Sym]) -> Vec<Sym> {
    let r = t.lookahead();
    let n = w.len();
    let mut look = vec![r.init(); n];
    for i in (0..n.saturating_sub(1)).rev() {
        look[i] = r.step(look[i + 1], w[i + 1]);
    }
    let (mut q, mut out) = (t.init(), Vec::new());
    for i in 0..n {
        out.extend_from_slice(t.output(q, look[i], w[i]));
        q = t.step(q, look[i], w[i]);
    }
    out
}

fn c2_get_tags() -> Result<String> {
    let start = Instant::now();
    let spec = tag_spec();
    ensure!((spec.k, spec.lookahead, spec.l) == (2, Some(2), 2), "unexpected sizes");
    let res = synthesize_with_lookahead(&spec, &SolverConfig::default())?;
    let took = within(start, Duration::from_secs(120))?;
    let t = res.outcome.solution().and_then(|s| s.lookahead()).context("no lookahead solution")?;
    ensure!(t.num_states() <= 2 && t.lookahead().num_states() <= 2, "solution exceeds k = 2 or kR = 2");
    let sigma = tag_alphabet();
    for (s, o) in TAG_EXAMPLES {
        let got = sigma.decode(&run_reversed_suffix(t, &sigma.encode(s)?));
        ensure!(got == o, "{s:?} gives {got:?}, expected {o:?}");
    }
    Ok(format!("{} examples hold, {took:.2?} of 120s", TAG_EXAMPLES.len()))
}

fn c3_distance() -> Result<String> {
    let start = Instant::now();
    let dir = TempDir::new()?;
    let out = dir.path().join("alternating.json");
    let spec = specs().join("alternating.json");
    ensure!(synth_to_file(&spec, &out)? == 0, "synth did not return Found");
    let mut report = Vec::new();
    let code = cmd_diff(&out, &specs().join("copying.json"), &DiffDomain::Spec(spec), &mut report)?;
    let report = String::from_utf8(report)?;
    ensure!(code == 0 && report == "equivalent\n", "diff against copying: {report:?}");
    let took = within(start, Duration::from_secs(60))?;
    let p = alternating_input();
    let half = Rational::new(1, 2);
    ensure!(!check_mean_aggregate(&p, &shifting_translator(), half)?.is_within(), "shifting accepted");
    ensure!(check_mean_aggregate(&p, &copying_translator(), half)?.is_within(), "copying rejected");
    Ok(format!("equivalent to copying on a(ba)*a, shifting rejected at 1/2, {took:.2?} of 60s"))
}

fn c4_lemmas() -> Result<String> {
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    // (a) examples drawn from a random machine are satisfiable, and every
    // decoded model reproduces them
    for round in 0..100 {
        let (k, n_sym, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let sigma = letters(n_sym);
        let hidden = random_ft(&mut rng, &sigma, k, l);
        let mut spec = SynthesisSpec::new(sigma.clone(), k, l);
        for _ in 0..5 {
            let w = random_word(&mut rng, &sigma, 6);
            let o = hidden.run(&w)?;
            spec = spec.example(&w, &o);
        }
        let res = synthesize(&spec, &cfg)?;
        let t = res.outcome.solution().and_then(|s| s.ft()).with_context(|| format!("(a) round {round}: not found"))?;
        for (s, o) in &spec.examples {
            ensure!(t.run(s)? == *o, "(a) round {round}: {s:?}");
        }
    }

    // (b) and (c) on planted instances
    let (mut with_distance, mut samples) = (0, 0);
    for round in 0..100 {
        let inst = planted_instance(&mut rng, 3, 3, 2, 4);
        let res = synthesize(&inst.spec(), &cfg)?;
        let t = res.outcome.solution().and_then(|s| s.ft()).with_context(|| format!("(b) round {round}: not found"))?;
        let (p, q) = (&inst.input_type, &inst.output_type);
        ensure!(hoare_check(p, t, q)?.holds(), "(b) round {round}: hoare_check fails");
        if let Some(d) = inst.distance {
            with_distance += 1;
            ensure!(check_mean_aggregate(p, t, d)?.is_within(), "(c) round {round}: aggregate exceeds {d}");
            for _ in 0..20 {
                if let Some(w) = random_accepted_word(&mut rng, p, 8).filter(|w| !w.is_empty()) {
                    let s = inst.alphabet().decode(&w);
                    ensure!(mean_edit_distance(&s, &t.run(&s)?)? <= d, "(c) round {round}: {s:?} exceeds {d}");
                    samples += 1;
                }
            }
        }
    }
    ensure!(with_distance >= 20, "only {with_distance} instances carry a distance bound");
    Ok(format!(
        "100 example round trips, 100 typed instances ({with_distance} with distance, {samples} samples), 0 violations"
    ))
}

fn c5_finitization() -> Result<String> {
    let (ft, mm) = finitize_sft(&escape_quotes_sft())?;
    let reference = escape_quotes();
    ensure!(ft.num_states() == reference.num_states(), "state count");
    let transitions = |t: &Ft| t.transitions().map(|tr| format!("{tr:?}")).collect::<Vec<_>>();
    ensure!(transitions(&ft) == transitions(&reference), "transitions differ");
    ensure!(ft == reference, "machines differ");
    let ascii = IntervalPred::ascii();
    let (quote, backslash) = (IntervalPred::single('"'), IntervalPred::single('\\'));
    let expected = vec![(ascii.minus(&quote).minus(&backslash), 'a'), (quote, '"'), (backslash, '\\')];
    ensure!(mm.minterms() == expected.as_slice(), "minterms {:?}", mm.minterms());
    ensure!(finitize_sft_with(&recover_sft(&ft, &mm)?, &mm)? == ft, "escape round trip");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..50 {
        let parts = rng.gen_range(1..=4);
        let mm = random_minterms(&mut rng, (0x20, 0x7e), parts);
        let k = rng.gen_range(1..=3);
        let t = random_ft(&mut rng, mm.alphabet(), k, 2);
        ensure!(finitize_sft_with(&recover_sft(&t, &mm)?, &mm)? == t, "round {round}");
    }
    Ok("escaper finitizes exactly, minterms [^\"\\]/a, \"/\", \\/\\, 51 round trips".into())
}

fn c6_repair() -> Result<String> {
    let cfg = SolverConfig::default();
    let examples: Vec<(String, String)> = ESCAPE_EXAMPLES.iter().map(|&(s, t)| (s.into(), t.into())).collect();
    let (_, q) = escape_types();
    let mut slowest = Duration::ZERO;
    for (state, c, to, out) in [(0, '"', 0, "\""), (0, '\\', 0, "\\"), (1, 'a', 0, "")] {
        let base = escape_quotes();
        let sigma = base.alphabet().clone();
        let sym = sigma.index_of(c).context("symbol")?;
        let bad = base.with_transition(state, sym, to, sigma.encode(out)?)?;
        ensure!(localize_faults(&bad, &examples)?.contains(&(state, sym)), "({state}, {c:?}) not localized");
        let mut problem = RepairProblem::new(bad, 2, 2)
            .types(TypeSpec::Regex(ESCAPE_INPUT.into()), TypeSpec::Regex(ESCAPE_OUTPUT.into()));
        problem.examples = examples.clone();
        for (name, method) in [
            ("input", repair_from_input as fn(&RepairProblem, &SolverConfig) -> transynth::Result<RepairResult>),
            ("template", repair_with_template),
        ] {
            let start = Instant::now();
            let res = method(&problem, &cfg)?;
            slowest = slowest.max(within(start, Duration::from_secs(60))?);
            let fixed = res.repaired().with_context(|| format!("({state}, {c:?}) {name}: not repaired"))?;
            for (s, t) in &examples {
                ensure!(fixed.run(s)?.as_deref() == Some(t.as_str()), "({state}, {c:?}) {name}: {s:?}");
            }
            for (t, dom) in fixed.branches() {
                ensure!(hoare_check(dom, t, &q)?.holds(), "({state}, {c:?}) {name}: hoare_check fails");
            }
        }
    }
    Ok(format!("3 faults localized and repaired by both methods, slowest {slowest:.2?} of 60s"))
}

fn c7_encoding_stats() -> Result<String> {
    // example steps only
    let sigma = escape_alphabet();
    let mut enc = declare_transducer_vars(2, &sigma, 2)?;
    enc.encode_example("a\"a", "a\\\"a")?;
    let s = enc.stats();
    ensure!(s.instances(Family::ExampleStep) == 3 * 4 * 2 * 3, "example step {}", s.instances(Family::ExampleStep));
    ensure!(s.instances(Family::ExampleInit) == 1 && s.instances(Family::ExampleFinal) == 1, "one init and final");

    // two-state types over two symbols
    let ab = ab_alphabet();
    let two = compile_regex("(a|b)(a|b)*", &ab)?;
    ensure!(two.num_states() == 2, "type has {} states", two.num_states());
    let mut enc = declare_transducer_vars(2, &ab, 1)?;
    enc.encode_types(&two, &two)?;
    enc.encode_distance(Rational::new(1, 2))?;
    let s = enc.stats();
    ensure!(s.instances(Family::TypeStep) == 16, "type step {}", s.instances(Family::TypeStep));
    ensure!(s.instances(Family::EnergyStep) == 16, "energy step {}", s.instances(Family::EnergyStep));
    ensure!(s.instances(Family::EdContains) == 4 && s.instances(Family::EdAbsent) == 4, "ed pairs");

    // the full escape encoding
    let (p, q) = escape_types();
    let (k, n_sym) = (2, sigma.len());
    let mut enc = declare_transducer_vars(k, &sigma, 2)?;
    let mut example_steps = 0;
    for (s, t) in ESCAPE_EXAMPLES {
        enc.encode_example(s, t)?;
        example_steps += s.chars().count() * t.chars().count() * k * n_sym;
    }
    enc.encode_types(&p, &q)?;
    enc.encode_distance(Rational::from_integer(1))?;
    let s = enc.stats();
    let product = p.num_states() * k * q.num_states() * n_sym;
    let expected = [
        (Family::ExampleStep, example_steps),
        (Family::ExampleInit, ESCAPE_EXAMPLES.len()),
        (Family::ExampleFinal, ESCAPE_EXAMPLES.len()),
        (Family::TypeStep, product),
        (Family::EdContains, k * n_sym),
        (Family::EdAbsent, k * n_sym),
        (Family::EnergyStep, product),
    ];
    for (family, n) in expected {
        ensure!(s.instances(family) == n, "{family}: {} instead of {n}", s.instances(family));
    }
    Ok(format!("72, 16/16/4, and escape ({example_steps} example steps, {product} type and energy steps) exact"))
}

/// Edit distance by plain recursion over suffixes.
fn naive_ed(s: &[char], t: &[char]) -> usize {
    match (s.split_first(), t.split_first()) {
        (None, _) => t.len(),
        (_, None) => s.len(),
        (Some((a, s2)), Some((b, t2))) => {
            let sub = naive_ed(s2, t2) + usize::from(a != b);
            sub.min(naive_ed(s2, t) + 1).min(naive_ed(s, t2) + 1)
        }
    }
}

fn c8_edit_distance() -> Result<String> {
    ensure!(edit_distance("ab", "acb") == 1, "ed(ab, acb)");
    ensure!(mean_edit_distance("ab", "acb")? == Rational::new(1, 2), "mean ed(ab, acb)");
    let sigma = letters(3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let [x, y, z] = [(); 3].map(|_| random_word(&mut rng, &sigma, 6));
        let (xc, yc): (Vec<char>, Vec<char>) = (x.chars().collect(), y.chars().collect());
        let (dxy, dyz, dxz) = (edit_distance(&x, &y), edit_distance(&y, &z), edit_distance(&x, &z));
        ensure!(dxy == naive_ed(&xc, &yc), "oracle on {x:?} {y:?}");
        ensure!(edit_distance(&x, &x) == 0, "identity on {x:?}");
        ensure!((dxy == 0) == (x == y), "separation on {x:?} {y:?}");
        ensure!(dxy == edit_distance(&y, &x), "symmetry on {x:?} {y:?}");
        ensure!(dxz <= dxy + dyz, "triangle on {x:?} {y:?} {z:?}");
    }
    Ok("ed(ab, acb) = 1, mean 1/2, metric on 1000 triples".into())
}

type Criterion = (&'static str, fn() -> Result<String>);

fn main() {
    let criteria: [Criterion; 8] = [
        ("escapeQuotes end-to-end", c1_escape_quotes),
        ("getTags with lookahead", c2_get_tags),
        ("distance discrimination", c3_distance),
        ("lemma suites", c4_lemmas),
        ("finitization fidelity", c5_finitization),
        ("repair", c6_repair),
        ("encoding size closed forms", c7_encoding_stats),
        ("edit distance oracle", c8_edit_distance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(anyhow::anyhow!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {e:#}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
