use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transynth::encoder::*;
use transynth::fixtures::*;
use transynth::oracle::{check_mean_aggregate, hoare_check, mean_edit_distance};
use transynth::random::{letters, planted_instance, random_accepted_word, random_ft, random_word};
use transynth::smt::*;
use transynth::*;

fn solve_enc(enc: &Encoding) -> Option<Ft> {
    let out = solve(&emit_smtlib(enc, "QF_LIA"), &SolverConfig::default()).expect("solver runs");
    match out.verdict {
        Verdict::Sat(model) => match decode_model(&model, enc).unwrap() {
            Machine::Plain(t) => Some(t),
            Machine::Lookahead(_) => panic!("plain shape"),
        },
        Verdict::Unsat => None,
        v => panic!("solver gave {v:?}"),
    }
}

/// Values the example encoding expects for `t`: the transition table and
/// the configuration sequence along each example.
fn assignment(enc: &Encoding, t: &Ft, examples: &[String]) -> HashMap<VarId, i64> {
    let mut val = HashMap::new();
    for (key, id) in enc.registry().keyed() {
        let v = match *key {
            VarKey::Dst { q, x } => t.step(q, x) as i64,
            VarKey::OutLen { q, x } => t.output(q, x).len() as i64,
            VarKey::OutCh { q, x, z } => t.output(q, x).get(z).copied().unwrap_or(0) as i64,
            VarKey::CfgPos { ex, i } => {
                let w = t.alphabet().encode(&examples[ex]).unwrap();
                t.run_syms(&w[..i]).len() as i64
            }
            VarKey::CfgState { ex, i } => {
                let w = t.alphabet().encode(&examples[ex]).unwrap();
                w[..i].iter().fold(t.init(), |q, &a| t.step(q, a)) as i64
            }
            _ => continue,
        };
        val.insert(id, v);
    }
    val
}

fn holds_under(enc: &Encoding, val: &HashMap<VarId, i64>) -> bool {
    enc.assertions().iter().all(|a| a.formula.eval(&|v| val[&v]))
}

#[test]
fn declared_variable_counts() {
    let enc = declare_transducer_vars(1, &letters(1), 1).unwrap();
    assert_eq!(enc.registry().len(), 3);
    let enc = declare_transducer_vars(2, &letters(3), 2).unwrap();
    let count = |f: fn(&VarKey) -> bool| enc.registry().keyed().filter(|(k, _)| f(k)).count();
    assert_eq!(count(|k| matches!(k, VarKey::Dst { .. })), 6);
    assert_eq!(count(|k| matches!(k, VarKey::OutCh { .. })), 12);
    assert_eq!(count(|k| matches!(k, VarKey::OutLen { .. })), 6);
    assert!(declare_transducer_vars(0, &letters(1), 1).is_err());
    assert!(declare_transducer_vars(1, &letters(1), 0).is_err());
}

#[test]
fn example_step_count_is_closed_form() {
    let mut enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
    enc.encode_example("a\"a", "a\\\"a").unwrap();
    assert_eq!(enc.stats().instances(Family::ExampleStep), 3 * 4 * 2 * 3);
    assert_eq!(enc.stats().instances(Family::ExampleInit), 1);
    assert_eq!(enc.stats().instances(Family::ExampleFinal), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let (k, n_sym, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let sigma = letters(n_sym);
        let mut enc = declare_transducer_vars(k, &sigma, l).unwrap();
        let mut expected = 0;
        for _ in 0..3 {
            let s = random_word(&mut rng, &sigma, 5);
            let t = random_word(&mut rng, &sigma, s.chars().count() * l);
            enc.encode_example(&s, &t).unwrap();
            expected += s.chars().count() * t.chars().count() * k * n_sym;
        }
        assert_eq!(enc.stats().instances(Family::ExampleStep), expected);
    }
}

#[test]
fn type_and_energy_counts_are_closed_form() {
    let sigma = ab_alphabet();
    let p = compile_regex("a*", &sigma).unwrap();
    let q = compile_regex("(ab)*", &sigma).unwrap();
    assert_eq!((p.num_states(), q.num_states()), (2, 3));
    let mut enc = declare_transducer_vars(2, &sigma, 1).unwrap();
    enc.encode_types(&p, &q).unwrap();
    enc.encode_distance(Rational::new(1, 2)).unwrap();
    let s = enc.stats();
    assert_eq!(s.instances(Family::TypeStep), 2 * 2 * 3 * 2);
    assert_eq!(s.instances(Family::EnergyStep), 2 * 2 * 3 * 2);
    assert_eq!(s.instances(Family::EdContains), 2 * 2);
    assert_eq!(s.instances(Family::EdAbsent), 2 * 2);
    assert_eq!(s.instances(Family::TypeInit), 1);
    assert_eq!(s.instances(Family::TypeFinal), 1);
    assert_eq!(s.instances(Family::EnergyFinal), 1);
    let two = compile_regex("(a|b)(a|b)*", &sigma).unwrap();
    let mut enc = declare_transducer_vars(2, &sigma, 1).unwrap();
    enc.encode_types(&two, &two).unwrap();
    assert_eq!(enc.stats().instances(Family::TypeStep), 16);
}

#[test]
fn distance_requires_types_and_positive_bounds() {
    let mut enc = declare_transducer_vars(1, &ab_alphabet(), 1).unwrap();
    assert!(enc.encode_distance(Rational::new(1, 2)).is_err());
    let u = Dfa::universal(ab_alphabet());
    enc.encode_types(&u, &u).unwrap();
    assert!(enc.encode_distance(Rational::from_integer(0)).is_err());
    assert!(enc.encode_types(&u, &u).is_err());
    let mut enc = declare_transducer_vars(1, &ab_alphabet(), 1).unwrap();
    assert!(enc.encode_example("ab", "aaa").is_err());
    assert!(matches!(enc.encode_example("c", ""), Err(Error::ForeignSymbol('c'))));
}

#[test]
fn emission_is_deterministic() {
    let build = || {
        let mut enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
        for (s, t) in ESCAPE_EXAMPLES {
            enc.encode_example(s, t).unwrap();
        }
        let (p, q) = escape_types();
        enc.encode_types(&p, &q).unwrap();
        enc.encode_distance(Rational::from_integer(1)).unwrap();
        emit_smtlib(&enc, "QF_LIA")
    };
    let doc = build();
    assert_eq!(doc, build());
    let decls = doc.lines().filter(|l| l.starts_with("(declare-const")).count();
    let enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
    assert_eq!(
        emit_smtlib(&enc, "QF_LIA").lines().filter(|l| l.starts_with("(declare-const")).count(),
        enc.registry().len()
    );
    assert!(decls > enc.registry().len());
    assert!(doc.starts_with("(set-option :produce-models true)\n(set-logic QF_LIA)\n"));
    assert!(doc.ends_with("(check-sat)\n") || doc.contains("(check-sat)\n(get-value ("));
    assert!(doc.trim_end().ends_with("(exit)"));
}

#[test]
fn solver_responses_parse() {
    assert_eq!(parse_response("unsat\n").unwrap(), Verdict::Unsat);
    assert_eq!(parse_response("unknown\n").unwrap(), Verdict::Unknown);
    match parse_response("sat\n((x 3)\n (y (- 2))\n (b true))\n").unwrap() {
        Verdict::Sat(m) => {
            assert_eq!(m["x"], Value::Int(3));
            assert_eq!(m["y"], Value::Int(-2));
            assert_eq!(m["b"], Value::Bool(true));
        }
        v => panic!("{v:?}"),
    }
    assert!(parse_response("(error \"line 1: unknown constant\")\nsat\n").is_err());
    assert!(parse_response("").is_err());
}

#[test]
fn decoding_a_handmade_model() {
    let t = escape_quotes();
    let enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
    let val = assignment(&enc, &t, &[]);
    let model: Model = val.iter().map(|(&id, &v)| (enc.registry().decl(id).name.clone(), Value::Int(v))).collect();
    assert_eq!(decode_model(&model, &enc).unwrap(), Machine::Plain(t));
    let mut broken = model.clone();
    broken.insert("olen_0_0".into(), Value::Int(5));
    assert!(matches!(decode_model(&broken, &enc), Err(Error::Decode(_))));
    broken.remove("olen_0_0");
    assert!(matches!(decode_model(&broken, &enc), Err(Error::Decode(_))));
}

/// Every constraint of the example families holds for the machine that
/// produced the examples, with its own configuration sequence.
#[test]
fn example_encoding_is_complete_by_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for round in 0..300 {
        let (k, n_sym, l) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let sigma = letters(n_sym);
        let t = random_ft(&mut rng, &sigma, k, l);
        let mut enc = declare_transducer_vars(k, &sigma, l).unwrap();
        let inputs: Vec<String> = (0..3).map(|_| random_word(&mut rng, &sigma, 6)).collect();
        for s in &inputs {
            enc.encode_example(s, &t.run(s).unwrap()).unwrap();
        }
        let val = assignment(&enc, &t, &inputs);
        assert!(holds_under(&enc, &val), "round {round}");
    }
}

/// Changing one output symbol of an example makes the producing machine
/// violate the encoding.
#[test]
fn example_encoding_rejects_other_outputs_by_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut checked = 0;
    while checked < 200 {
        let sigma = letters(2);
        let t = random_ft(&mut rng, &sigma, 2, 2);
        let s = random_word(&mut rng, &sigma, 6);
        let mut out = t.alphabet().encode(&t.run(&s).unwrap()).unwrap();
        if out.is_empty() {
            continue;
        }
        let i = rng.gen_range(0..out.len());
        out[i] = 1 - out[i];
        let mut enc = declare_transducer_vars(2, &sigma, 2).unwrap();
        enc.encode_example(&s, &sigma.decode(&out)).unwrap();
        let val = assignment(&enc, &t, std::slice::from_ref(&s));
        assert!(!holds_under(&enc, &val));
        checked += 1;
    }
}

/// All total transducers with two states, two symbols and unit outputs.
fn all_small_transducers() -> Vec<Ft> {
    let sigma = letters(2);
    let options: Vec<(usize, Vec<Sym>)> =
        (0..2).flat_map(|to| [vec![], vec![0], vec![1]].into_iter().map(move |o| (to, o))).collect();
    let mut all = Vec::new();
    for code in 0..options.len().pow(4) {
        let mut c = code;
        let mut table = Vec::new();
        for _ in 0..4 {
            table.push(options[c % options.len()].clone());
            c /= options.len();
        }
        all.push(Ft::from_fn(sigma.clone(), 2, 0, |q, a| table[q * 2 + a].clone()).unwrap());
    }
    all
}

/// Satisfiability agrees with exhaustive search over machines, and every
/// decoded machine reproduces the examples.
#[test]
fn example_encoding_sat_iff_some_machine_fits() {
    let machines = all_small_transducers();
    assert_eq!(machines.len(), 1296);
    let sigma = letters(2);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let (mut sat, mut unsat) = (0, 0);
    for round in 0..60 {
        let examples: Vec<(String, String)> = (0..3)
            .map(|_| {
                let s = random_word(&mut rng, &sigma, 4);
                let t = random_word(&mut rng, &sigma, s.len());
                (s, t)
            })
            .collect();
        let fits = |t: &Ft| examples.iter().all(|(s, o)| t.run(s).unwrap() == *o);
        let exists = machines.iter().any(fits);
        let mut enc = declare_transducer_vars(2, &sigma, 1).unwrap();
        for (s, t) in &examples {
            enc.encode_example(s, t).unwrap();
        }
        match solve_enc(&enc) {
            Some(t) => {
                assert!(exists, "round {round}");
                assert!(fits(&t), "round {round}");
                sat += 1;
            }
            None => {
                assert!(!exists, "round {round}");
                unsat += 1;
            }
        }
    }
    assert!(sat > 5 && unsat > 5, "{sat} sat, {unsat} unsat");
}

/// Random instances with examples, types and a distance bound, all
/// satisfied by a hidden machine: the encoding is satisfiable and the
/// decoded machine meets every requirement.
#[test]
fn random_instances_are_solved_soundly() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for round in 0..100 {
        let inst = planted_instance(&mut rng, 3, 3, 2, 4);
        let (p, q, sigma) = (&inst.input_type, &inst.output_type, inst.alphabet());
        let mut enc = declare_transducer_vars(inst.k, sigma, inst.l).unwrap();
        for (s, t) in &inst.examples {
            enc.encode_example(s, t).unwrap();
        }
        enc.encode_types(p, q).unwrap();
        if let Some(d) = inst.distance {
            enc.encode_distance(d).unwrap();
        }
        let t = solve_enc(&enc).unwrap_or_else(|| panic!("round {round}: the hidden machine is a model"));
        for (s, o) in &inst.examples {
            assert_eq!(&t.run(s).unwrap(), o, "round {round}");
        }
        assert!(hoare_check(p, &t, q).unwrap().holds(), "round {round}");
        if let Some(d) = inst.distance {
            assert!(check_mean_aggregate(p, &t, d).unwrap().is_within(), "round {round}");
            for _ in 0..20 {
                if let Some(w) = random_accepted_word(&mut rng, p, 8).filter(|w| !w.is_empty()) {
                    let s = sigma.decode(&w);
                    assert!(mean_edit_distance(&s, &t.run(&s).unwrap()).unwrap() <= d, "round {round}");
                }
            }
        }
    }
}

#[test]
fn pinned_transitions_are_kept() {
    let t = escape_quotes();
    let pins = TemplatePin::from_ft(&t, &[(0, 1)]);
    assert_eq!(pins.len(), 5);
    let mut enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
    enc.encode_template(&pins).unwrap();
    enc.encode_example("\"", "\\\"").unwrap();
    let got = solve_enc(&enc).unwrap();
    assert_eq!(got, t);
    let mut enc = declare_transducer_vars(2, &escape_alphabet(), 2).unwrap();
    enc.encode_template(&TemplatePin::from_ft(&t, &[])).unwrap();
    enc.encode_example("\"", "\"").unwrap();
    assert_eq!(solve_enc(&enc), None);
}

#[test]
fn lookahead_shape_declares_reverse_automaton() {
    let enc = Encoding::new(TransducerShape::with_lookahead(2, tag_alphabet(), 2, 2)).unwrap();
    let dr = enc.registry().keyed().filter(|(k, _)| matches!(k, VarKey::Dr { .. })).count();
    assert_eq!(dr, 2 * 3);
    let dst = enc.registry().keyed().filter(|(k, _)| matches!(k, VarKey::Dst { .. })).count();
    assert_eq!(dst, 2 * 2 * 3);
    assert!(Encoding::new(TransducerShape::with_lookahead(2, tag_alphabet(), 2, 0)).is_err());
}
