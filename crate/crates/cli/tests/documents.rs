use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transynth::fixtures::{escape_quotes_sft, tag_extractor};
use transynth::random::{letters, random_dfa, random_ft, random_lookahead_ft, random_minterms};
use transynth::restrict_union;
use transynth::symbolic::{recover_sft, Sfa};
use transynth_cli::doc::{DistanceDoc, SpecDocument};
use transynth_cli::{Document, Loaded};

/// A random machine of the given document kind.
fn random_machine(kind: usize, seed: u64) -> Loaded {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = letters(rng.gen_range(1..=3));
    let k = rng.gen_range(1..=3);
    match kind {
        0 => Loaded::Dfa(random_dfa(&mut rng, &sigma, k, 0.5)),
        1 => Loaded::Ft(random_ft(&mut rng, &sigma, k, 2)),
        2 => {
            let k_r = rng.gen_range(1..=2);
            Loaded::Lookahead(random_lookahead_ft(&mut rng, &sigma, k, k_r, 2))
        }
        3 => {
            let dom = random_dfa(&mut rng, &sigma, 2, 0.5);
            let rest = dom.complement();
            let branches = vec![(random_ft(&mut rng, &sigma, k, 2), dom), (random_ft(&mut rng, &sigma, 1, 1), rest)];
            Loaded::Restricted(restrict_union(branches).unwrap())
        }
        4 => {
            let parts = rng.gen_range(1..=4);
            let mm = random_minterms(&mut rng, (0x20, 0x7e), parts);
            Loaded::Sfa(Sfa::from_finite(&random_dfa(&mut rng, mm.alphabet(), k, 0.5), &mm).unwrap())
        }
        5 => {
            let parts = rng.gen_range(1..=4);
            let mm = random_minterms(&mut rng, (0x20, 0x7e), parts);
            Loaded::Sft(recover_sft(&random_ft(&mut rng, mm.alphabet(), k, 2), &mm).unwrap())
        }
        _ => {
            let parts = rng.gen_range(2..=4);
            let mm = random_minterms(&mut rng, (0x20, 0x7e), parts);
            let dom = random_dfa(&mut rng, mm.alphabet(), 2, 0.5);
            let rest = dom.complement();
            let branch = |rng: &mut ChaCha8Rng, d| {
                let t = recover_sft(&random_ft(rng, mm.alphabet(), k, 2), &mm).unwrap();
                (t, Sfa::from_finite(d, &mm).unwrap())
            };
            Loaded::RestrictedSymbolic(vec![branch(&mut rng, &dom), branch(&mut rng, &rest)])
        }
    }
}

fn round_trip(m: &Loaded) -> Loaded {
    let text = serde_json::to_string(&Document::from_machine(m)).unwrap();
    let doc: Document = serde_json::from_str(&text).unwrap();
    doc.load().unwrap()
}

proptest! {
    #[test]
    fn documents_round_trip(kind in 0usize..7, seed in any::<u64>()) {
        let m = random_machine(kind, seed);
        let back = round_trip(&m);
        prop_assert_eq!(back.kind(), m.kind());
        prop_assert_eq!(&back, &m);
        let doc = Document::from_machine(&m);
        prop_assert_eq!(Document::from_machine(&back), doc);
    }
}

#[test]
fn fixtures_round_trip() {
    for m in [Loaded::Sft(escape_quotes_sft()), Loaded::Lookahead(tag_extractor())] {
        assert_eq!(round_trip(&m), m);
    }
}

#[test]
fn kinds_are_tagged() {
    let doc = Document::from_machine(&Loaded::Ft(transynth::fixtures::escape_quotes()));
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["kind"], "ft");
    assert_eq!(v["alphabet"], "a\"\\");
    assert_eq!(v["transitions"][1]["out"], "\\\"");
}

#[test]
fn malformed_documents_are_rejected() {
    let load = |s: &str| serde_json::from_str::<Document>(s).map_err(anyhow::Error::from).and_then(|d| d.load());
    // a partial transducer
    assert!(load(
        r#"{"kind":"ft","alphabet":"ab","states":1,"init":0,"transitions":[{"from":0,"on":"a","out":"","to":0}]}"#
    )
    .is_err());
    // a target out of range
    assert!(load(
        r#"{"kind":"ft","alphabet":"a","states":1,"init":0,"transitions":[{"from":0,"on":"a","out":"","to":3}]}"#
    )
    .is_err());
    // an output symbol outside the alphabet
    assert!(load(
        r#"{"kind":"ft","alphabet":"a","states":1,"init":0,"transitions":[{"from":0,"on":"a","out":"b","to":0}]}"#
    )
    .is_err());
    assert!(load(r#"{"kind":"pda","states":1}"#).is_err());
    assert!(load(r#"{"kind":"restrictedSymbolic","branches":[]}"#).is_err());
    // overlapping symbolic guards
    assert!(load(
        r#"{"kind":"sfa","universe":[[97,99]],"states":1,"init":0,"finals":[0],
            "transitions":[{"from":0,"guard":[[97,98]],"to":0},{"from":0,"guard":[[98,99]],"to":0}]}"#
    )
    .is_err());
}

#[test]
fn spec_documents_build_specs() {
    let doc: SpecDocument = serde_json::from_str(
        r#"{"alphabet":"ab","k":2,"l":1,"examples":[{"in":"ab","out":"ba"}],
            "inputType":{"regex":"(ab)*"},"outputType":{"dfa":{"states":1,"init":0,"finals":[0],
            "transitions":[{"from":0,"on":"ab","to":0}]}},"distance":{"mean":"3/2"}}"#,
    )
    .unwrap();
    let spec = doc.to_spec().unwrap();
    assert_eq!(spec.examples, vec![("ab".to_owned(), "ba".to_owned())]);
    assert_eq!(spec.distance, Some(transynth::DistanceBound::Mean(transynth::Rational::new(3, 2))));
    match spec.output_type {
        Some(transynth::TypeSpec::Dfa(d)) => {
            assert!(d.equivalent(&transynth::Dfa::universal(transynth::fixtures::ab_alphabet())).unwrap())
        }
        other => panic!("{other:?}"),
    }
    let mut bad = doc.clone();
    bad.distance = Some(DistanceDoc::Mean("half".into()));
    assert!(bad.to_spec().is_err());
    let mut bad = doc;
    bad.output_type = None;
    assert!(bad.to_spec().is_err());
}
