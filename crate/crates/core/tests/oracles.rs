use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transynth::fixtures::*;
use transynth::oracle::*;
use transynth::random::{letters, random_dfa, random_ft, random_lookahead_ft};
use transynth::*;

/// Levenshtein distance by plain recursion; exponential but independent
/// of the library's table.
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

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

#[test]
fn edit_distance_values() {
    assert_eq!(edit_distance("ab", "acb"), 1);
    assert_eq!(edit_distance("abc", "abc"), 0);
    assert_eq!(edit_distance("abd", "bd"), 1);
    assert_eq!(mean_edit_distance("ab", "acb").unwrap(), Rational::new(1, 2));
    assert_eq!(mean_edit_distance("abc", "abc").unwrap(), Rational::from_integer(0));
    assert_eq!(mean_edit_distance("aa", "abc").unwrap(), Rational::from_integer(1));
    assert!(mean_edit_distance("", "a").is_err());
}

#[test]
fn edit_distance_is_a_metric_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xED17);
    let pool = ['a', 'b', 'c'];
    let word = |rng: &mut ChaCha8Rng| -> String {
        let n = rng.gen_range(0..=6);
        (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
    };
    for _ in 0..1000 {
        let (x, y, z) = (word(&mut rng), word(&mut rng), word(&mut rng));
        let (xy, yz, xz) = (edit_distance(&x, &y), edit_distance(&y, &z), edit_distance(&x, &z));
        assert_eq!(xy, naive_ed(&chars(&x), &chars(&y)));
        assert_eq!(xy, edit_distance(&y, &x));
        assert_eq!(xy == 0, x == y);
        assert!(xz <= xy + yz);
    }
}

fn violates(p: &Dfa, t: &Ft, q: &Dfa, w: &[Sym]) -> bool {
    p.accepts_syms(w) && !q.accepts_syms(&t.run_syms(w))
}

#[test]
fn hoare_examples() {
    let sigma = ab_alphabet();
    let a_star = compile_regex("a*", &sigma).unwrap();
    assert!(hoare_check(&a_star, &Ft::identity(sigma.clone()), &a_star).unwrap().holds());
    let a_to_b = Ft::from_transitions(sigma, 1, 0, &[(0, 'a', "b", 0), (0, 'b', "b", 0)]).unwrap();
    assert_eq!(hoare_check(&a_star, &a_to_b, &a_star).unwrap(), HoareVerdict::Counterexample("a".into()));
    let (p, q) = escape_types();
    assert!(hoare_check(&p, &escape_quotes(), &q).unwrap().holds());
}

#[test]
fn strict_escape_type_rejects_the_reference() {
    let sigma = escape_alphabet();
    let (p, _) = escape_types();
    let strict = compile_regex(ESCAPE_OUTPUT_STRICT, &sigma).unwrap();
    assert_eq!(hoare_check(&p, &escape_quotes(), &strict).unwrap(), HoareVerdict::Counterexample("\"\\".into()));
}

#[test]
fn hoare_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..300 {
        let sigma = letters(rng.gen_range(1..=2));
        let k = rng.gen_range(1..=2);
        let p_size = rng.gen_range(1..=2);
        let p = random_dfa(&mut rng, &sigma, p_size, 0.6);
        let q_size = rng.gen_range(1..=2);
        let q = random_dfa(&mut rng, &sigma, q_size, 0.6);
        let t = random_ft(&mut rng, &sigma, k, 2);
        // every product has at most 8 states, so a shortest violation has
        // length below 8
        let words = sigma.words_up_to(8);
        let brute = words.iter().find(|w| violates(&p, &t, &q, w));
        match hoare_check(&p, &t, &q).unwrap() {
            HoareVerdict::Holds => assert!(brute.is_none(), "round {round}: missed {brute:?}"),
            HoareVerdict::Counterexample(w) => {
                let w = sigma.encode(&w).unwrap();
                assert!(violates(&p, &t, &q, &w), "round {round}");
                assert_eq!(w.len(), brute.expect("violation exists").len(), "round {round}");
            }
        }
    }
}

#[test]
fn lookahead_hoare_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..200 {
        let sigma = letters(2);
        let p_size = rng.gen_range(1..=2);
        let p = random_dfa(&mut rng, &sigma, p_size, 0.6);
        let q_size = rng.gen_range(1..=2);
        let q = random_dfa(&mut rng, &sigma, q_size, 0.6);
        let t = random_lookahead_ft(&mut rng, &sigma, 2, 2, 2);
        let bad = |w: &[Sym]| p.accepts_syms(w) && !q.accepts_syms(&t.run_syms(w));
        let brute = sigma.words_up_to(9).into_iter().find(|w| bad(w));
        let bad_dfa = bad_inputs_lookahead(&p, &t, &q).unwrap();
        for w in sigma.words_up_to(6) {
            assert_eq!(bad_dfa.accepts_syms(&w), bad(&w), "round {round}");
        }
        match hoare_check_lookahead(&p, &t, &q).unwrap() {
            HoareVerdict::Holds => assert!(brute.is_none(), "round {round}"),
            HoareVerdict::Counterexample(w) => {
                let w = sigma.encode(&w).unwrap();
                assert!(bad(&w));
                assert_eq!(Some(w.len()), brute.map(|b| b.len()));
            }
        }
    }
}

#[test]
fn output_language_examples() {
    let (p, _) = escape_types();
    let out = output_language(&p, &escape_quotes()).unwrap();
    assert!(out.accepts("a\\\"a").unwrap());
    assert!(!out.accepts("a\"a").unwrap());
    let sigma = ab_alphabet();
    let a_star = compile_regex("a*", &sigma).unwrap();
    let doubler = Ft::from_transitions(sigma.clone(), 1, 0, &[(0, 'a', "bb", 0), (0, 'b', "", 0)]).unwrap();
    let got = output_language(&a_star, &doubler).unwrap();
    assert!(got.equivalent(&compile_regex("(bb)*", &sigma).unwrap()).unwrap());
    let id = output_language(&alternating_input(), &Ft::identity(sigma)).unwrap();
    assert!(id.equivalent(&alternating_input()).unwrap());
}

#[test]
fn output_language_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let sigma = letters(2);
        // inputs of length at most 4 only, so the image is finite
        let bounded = compile_regex("(a|b|())(a|b|())(a|b|())(a|b|())", &sigma).unwrap();
        let p = random_dfa(&mut rng, &sigma, 2, 0.6).intersect(&bounded).unwrap();
        let t = random_ft(&mut rng, &sigma, 2, 2);
        let image: std::collections::BTreeSet<Vec<Sym>> =
            sigma.words_up_to(4).into_iter().filter(|w| p.accepts_syms(w)).map(|w| t.run_syms(&w)).collect();
        let out = output_language(&p, &t).unwrap();
        for w in sigma.words_up_to(8) {
            assert_eq!(out.accepts_syms(&w), image.contains(&w));
        }
    }
}

#[test]
fn bad_inputs_examples() {
    let (p, q) = escape_types();
    assert!(bad_inputs(&p, &escape_quotes(), &q).unwrap().is_empty());
    let sigma = escape_alphabet();
    let broken =
        escape_quotes().with_transition(0, sigma.index_of('"').unwrap(), 0, sigma.encode("\"").unwrap()).unwrap();
    let bad = bad_inputs(&p, &broken, &q).unwrap();
    assert!(bad.accepts("a\"a").unwrap());
    assert!(!bad.accepts("aa").unwrap());
    for w in sigma.words_up_to(4) {
        assert_eq!(bad.accepts_syms(&w), violates(&p, &broken, &q, &w));
    }
    assert!(bad_inputs(&Dfa::empty(sigma), &broken, &q).unwrap().is_empty());
}

#[test]
fn mean_aggregate_examples() {
    let p = alternating_input();
    let half = Rational::new(1, 2);
    assert!(check_mean_aggregate(&p, &copying_translator(), half).unwrap().is_within());
    match check_mean_aggregate(&p, &shifting_translator(), half).unwrap() {
        CostVerdict::Exceeds { witness, .. } => {
            let cost = shifting_translator().aggregate_cost(&witness).unwrap();
            assert!(Rational::from_integer(cost as i64) > half * witness.len() as i64);
            assert!(p.accepts(&witness).unwrap());
        }
        CostVerdict::Within => panic!("mean cost 1 exceeds 1/2"),
    }
    assert!(check_mean_aggregate(&p, &shifting_translator(), Rational::from_integer(1)).unwrap().is_within());
    let id = Ft::identity(ab_alphabet());
    assert!(check_mean_aggregate(&Dfa::universal(ab_alphabet()), &id, Rational::new(1, 100)).unwrap().is_within());
    assert!(check_mean_aggregate(&p, &id, Rational::from_integer(0)).is_err());
}

fn exceeds_mean(t: &Ft, w: &[Sym], d: Rational) -> bool {
    !w.is_empty() && Rational::from_integer(t.aggregate_cost_syms(w) as i64) > d * w.len() as i64
}

#[test]
fn mean_aggregate_agrees_with_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut rejected = 0;
    for round in 0..300 {
        let sigma = letters(2);
        let p_size = rng.gen_range(1..=3);
        let p = random_dfa(&mut rng, &sigma, p_size, 0.5);
        let t_size = rng.gen_range(1..=2);
        let t = random_ft(&mut rng, &sigma, t_size, 2);
        let d = Rational::new(rng.gen_range(1..=4), rng.gen_range(1..=4));
        let words = sigma.words_up_to(8);
        match check_mean_aggregate(&p, &t, d).unwrap() {
            CostVerdict::Within => {
                for w in words.iter().filter(|w| p.accepts_syms(w)) {
                    assert!(!exceeds_mean(&t, w, d), "round {round}: {w:?}");
                    if !w.is_empty() {
                        let s = sigma.decode(w);
                        assert!(mean_edit_distance(&s, &sigma.decode(&t.run_syms(w))).unwrap() <= d);
                    }
                }
            }
            CostVerdict::Exceeds { witness, .. } => {
                rejected += 1;
                let w = sigma.encode(&witness).unwrap();
                assert!(p.accepts_syms(&w), "round {round}");
                assert!(exceeds_mean(&t, &w, d), "round {round}: {witness}");
            }
        }
    }
    assert!(rejected > 20 && rejected < 280, "{rejected}");
}

#[test]
fn total_aggregate_agrees_with_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for round in 0..300 {
        let sigma = letters(2);
        let p_size = rng.gen_range(1..=3);
        let p = random_dfa(&mut rng, &sigma, p_size, 0.5);
        let t_size = rng.gen_range(1..=2);
        let t = random_ft(&mut rng, &sigma, t_size, 2);
        let bound = rng.gen_range(0..=3u64);
        match check_total_aggregate(&p, &t, bound).unwrap() {
            CostVerdict::Within => {
                for w in sigma.words_up_to(8).iter().filter(|w| p.accepts_syms(w)) {
                    assert!(t.aggregate_cost_syms(w) as u64 <= bound, "round {round}");
                }
            }
            CostVerdict::Exceeds { witness, .. } => {
                let w = sigma.encode(&witness).unwrap();
                assert!(p.accepts_syms(&w));
                assert!(t.aggregate_cost_syms(&w) as u64 > bound, "round {round}");
            }
        }
    }
}

#[test]
fn lookahead_mean_aggregate_agrees_with_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for round in 0..200 {
        let sigma = letters(2);
        let p_size = rng.gen_range(1..=3);
        let p = random_dfa(&mut rng, &sigma, p_size, 0.5);
        let t = random_lookahead_ft(&mut rng, &sigma, 2, 2, 2);
        let d = Rational::new(rng.gen_range(1..=3), 2);
        let over =
            |w: &[Sym]| !w.is_empty() && Rational::from_integer(t.aggregate_cost_syms(w) as i64) > d * w.len() as i64;
        match check_mean_aggregate_lookahead(&p, &t, d).unwrap() {
            CostVerdict::Within => {
                for w in sigma.words_up_to(8).iter().filter(|w| p.accepts_syms(w)) {
                    assert!(!over(w), "round {round}");
                }
            }
            CostVerdict::Exceeds { witness, .. } => {
                let w = sigma.encode(&witness).unwrap();
                assert!(p.accepts_syms(&w) && over(&w), "round {round}");
            }
        }
    }
}

#[test]
fn tag_extractor_meets_its_spec() {
    let sigma = tag_alphabet();
    let p = Dfa::universal(sigma.clone());
    let q = compile_regex("(<a>)*", &sigma).unwrap();
    let t = tag_extractor();
    assert!(hoare_check_lookahead(&p, &t, &q).unwrap().holds());
    assert!(check_mean_aggregate_lookahead(&p, &t, Rational::from_integer(1)).unwrap().is_within());
}

#[test]
fn distinguishing_input_examples() {
    let sigma = ab_alphabet();
    let t = escape_quotes();
    assert_eq!(find_distinguishing_input(&t, &t, &escape_types().0).unwrap(), None);
    let a_star = compile_regex("a*", &sigma).unwrap();
    let a_to_b = Ft::from_transitions(sigma.clone(), 1, 0, &[(0, 'a', "b", 0), (0, 'b', "b", 0)]).unwrap();
    assert_eq!(find_distinguishing_input(&Ft::identity(sigma), &a_to_b, &a_star).unwrap().as_deref(), Some("a"));
    assert_eq!(
        find_distinguishing_input(&shifting_translator(), &copying_translator(), &alternating_input()).unwrap(),
        None
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn distinguishing_input_is_shortest(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = letters(2);
        let p = random_dfa(&mut rng, &sigma, 2, 0.6);
        let t1 = random_ft(&mut rng, &sigma, 2, 2);
        // a perturbed copy differs on few inputs
        let t2 = if rng.gen_bool(0.5) {
            let (q, a) = (rng.gen_range(0..2), rng.gen_range(0..2));
            t1.with_transition(q, a, rng.gen_range(0..2), transynth::random::random_output(&mut rng, 2, 2)).unwrap()
        } else {
            random_ft(&mut rng, &sigma, 2, 2)
        };
        let brute = sigma.words_up_to(8).into_iter().find(|w| p.accepts_syms(w) && t1.run_syms(w) != t2.run_syms(w));
        match find_distinguishing_input(&t1, &t2, &p).unwrap() {
            None => prop_assert!(brute.is_none()),
            Some(w) => {
                let w = sigma.encode(&w).unwrap();
                prop_assert!(p.accepts_syms(&w));
                prop_assert_ne!(t1.run_syms(&w), t2.run_syms(&w));
                if let Some(b) = brute {
                    prop_assert_eq!(w.len(), b.len());
                }
            }
        }
    }
}
