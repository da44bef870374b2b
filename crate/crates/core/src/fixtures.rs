//! Reference machines and specifications used by tests, benchmarks and
//! the acceptance suite.

use crate::alphabet::Alphabet;
use crate::automata::{compile_regex, Dfa, Ft, LookaheadFt};
use crate::driver::{DistanceBound, SynthesisSpec, TypeSpec};
use crate::symbolic::{IntervalPred, OutputFunc, Sft, SftTransition};
use crate::Rational;

/// Input type of the quote escaper: a backslash may only end the string or
/// precede another symbol.
pub const ESCAPE_INPUT: &str = r#"[a"]*\\?|([a"]*\\[a"\\][a"]*)*"#;
/// Output type of the quote escaper: every quote is escaped and a single
/// backslash may close the string.
pub const ESCAPE_OUTPUT: &str = r#"a*\\?|(a*\\[a"\\]a*)*\\?"#;
/// [`ESCAPE_OUTPUT`] without the closing backslash after escape groups. It
/// rejects `\"\`, which [`escape_quotes`] produces from `"\`.
pub const ESCAPE_OUTPUT_STRICT: &str = r#"a*\\?|(a*\\[a"\\]a*)*"#;

pub const ESCAPE_EXAMPLES: [(&str, &str); 5] =
    [("a\"a", "a\\\"a"), ("a\\\\a", "a\\\\a"), ("a\\a", "a\\a"), ("a\\\"a", "a\\\"a"), ("\\", "\\")];

pub fn escape_alphabet() -> Alphabet {
    Alphabet::new(['a', '"', '\\']).expect("distinct symbols")
}

/// The two-state quote escaper over `a " \`.
pub fn escape_quotes() -> Ft {
    Ft::from_transitions(
        escape_alphabet(),
        2,
        0,
        &[
            (0, 'a', "a", 0),
            (0, '"', "\\\"", 0),
            (0, '\\', "\\", 1),
            (1, 'a', "a", 0),
            (1, '"', "\"", 0),
            (1, '\\', "\\", 0),
        ],
    )
    .expect("total")
}

pub fn escape_types() -> (Dfa, Dfa) {
    let sigma = escape_alphabet();
    (compile_regex(ESCAPE_INPUT, &sigma).expect("valid"), compile_regex(ESCAPE_OUTPUT, &sigma).expect("valid"))
}

/// Five examples, the escaping types, mean distance 1, two states and
/// outputs of length at most two.
pub fn escape_spec() -> SynthesisSpec {
    let mut spec = SynthesisSpec::new(escape_alphabet(), 2, 2)
        .types(TypeSpec::Regex(ESCAPE_INPUT.into()), TypeSpec::Regex(ESCAPE_OUTPUT.into()))
        .distance(DistanceBound::Mean(Rational::from_integer(1)));
    spec.examples = ESCAPE_EXAMPLES.iter().map(|&(s, t)| (s.to_owned(), t.to_owned())).collect();
    spec
}

/// The quote escaper as a symbolic transducer over ASCII.
pub fn escape_quotes_sft() -> Sft {
    let q = IntervalPred::single('"');
    let bs = IntervalPred::single('\\');
    let ascii = IntervalPred::ascii();
    let other = ascii.minus(&q).minus(&bs);
    let t = |from, guard: &IntervalPred, outputs, to| SftTransition { from, guard: guard.clone(), outputs, to };
    Sft::new(
        ascii.clone(),
        2,
        0,
        vec![
            t(0, &other, vec![OutputFunc::Identity], 0),
            t(0, &q, vec![OutputFunc::Const('\\'), OutputFunc::Identity], 0),
            t(0, &bs, vec![OutputFunc::Identity], 1),
            t(1, &ascii.minus(&bs), vec![OutputFunc::Identity], 0),
            t(1, &bs, vec![OutputFunc::Identity], 0),
        ],
    )
    .expect("deterministic and total")
}

pub fn ab_alphabet() -> Alphabet {
    Alphabet::new(['a', 'b']).expect("distinct symbols")
}

/// Inputs `a(ba)*a`.
pub fn alternating_input() -> Dfa {
    compile_regex("a(ba)*a", &ab_alphabet()).expect("valid")
}

/// Translates `a(ba)^n a` to `(ab)^n a`, deleting the first `a` and
/// shifting every later symbol; mean cost 1. Unused transitions go to a
/// sink emitting nothing.
pub fn shifting_translator() -> Ft {
    Ft::from_transitions(
        ab_alphabet(),
        4,
        0,
        &[
            (0, 'a', "", 1),
            (0, 'b', "", 3),
            (1, 'b', "a", 2),
            (1, 'a', "a", 3),
            (2, 'a', "b", 1),
            (2, 'b', "", 3),
            (3, 'a', "", 3),
            (3, 'b', "", 3),
        ],
    )
    .expect("total")
}

/// Same translation as [`shifting_translator`] on `a(ba)*a`, copying
/// everything but the final `a`.
pub fn copying_translator() -> Ft {
    Ft::from_transitions(
        ab_alphabet(),
        4,
        0,
        &[
            (0, 'a', "a", 1),
            (0, 'b', "", 3),
            (1, 'b', "b", 2),
            (1, 'a', "", 3),
            (2, 'a', "a", 1),
            (2, 'b', "", 3),
            (3, 'a', "", 3),
            (3, 'b', "", 3),
        ],
    )
    .expect("total")
}

/// Examples of the `a(ba)^n a` translation, mean distance 1/2, four
/// states, unit outputs.
pub fn alternating_spec() -> SynthesisSpec {
    let mut spec = SynthesisSpec::new(ab_alphabet(), 4, 1)
        .types(TypeSpec::Dfa(alternating_input()), TypeSpec::Regex("[ab]*".into()))
        .distance(DistanceBound::Mean(Rational::new(1, 2)));
    for n in 0..4 {
        let input = format!("a{}a", "ba".repeat(n));
        let output = format!("{}a", "ab".repeat(n));
        spec.examples.push((input, output));
    }
    spec
}

pub fn tag_alphabet() -> Alphabet {
    Alphabet::new(['a', '<', '>']).expect("distinct symbols")
}

pub const TAG_EXAMPLES: [(&str, &str); 5] =
    [("<a>", "<a>"), ("a<a>a", "<a>"), ("<<a>", "<a>"), ("<>a", ""), ("<a<a>>", "<a>")];

/// Extracts every `<a>` tag: two states, two lookahead states, outputs of
/// length at most two, mean distance 1.
pub fn tag_spec() -> SynthesisSpec {
    let mut spec = SynthesisSpec::new(tag_alphabet(), 2, 2)
        .types(TypeSpec::Regex("[a<>]*".into()), TypeSpec::Regex("(<a>)*".into()))
        .distance(DistanceBound::Mean(Rational::from_integer(1)))
        .lookahead(2);
    spec.examples = TAG_EXAMPLES.iter().map(|&(s, t)| (s.to_owned(), t.to_owned())).collect();
    spec
}

/// A tag extractor whose lookahead state 1 means "the next symbol is `>`".
pub fn tag_extractor() -> LookaheadFt {
    let sigma = tag_alphabet();
    let gt = sigma.index_of('>').expect("listed");
    let lt = sigma.index_of('<').expect("listed");
    let a = sigma.index_of('a').expect("listed");
    let r = Dfa::from_fn(sigma.clone(), 2, 0, &[], |_, c| usize::from(c == gt)).expect("total");
    LookaheadFt::from_fn(r, 2, 0, |q, rho, c| match (q, c) {
        (0, c) if c == lt => (if rho == 1 { 0 } else { 1 }, vec![]),
        (0, _) => (0, vec![]),
        (_, c) if c == a && rho == 1 => (1, vec![lt, a]),
        (_, c) if c == a => (0, vec![]),
        (_, c) if c == lt => (if rho == 1 { 0 } else { 1 }, vec![]),
        (_, _) => (0, vec![gt]),
    })
    .expect("total")
}

pub fn abcd_alphabet() -> Alphabet {
    Alphabet::new(['a', 'b', 'c', 'd']).expect("distinct symbols")
}

/// `abc -> ab`, `abd -> bd` on inputs `ab[cd]` with mean distance 1/3:
/// the first symbol is kept or dropped depending on the last one.
pub fn suffix_spec() -> SynthesisSpec {
    SynthesisSpec::new(abcd_alphabet(), 1, 1)
        .example("abc", "ab")
        .example("abd", "bd")
        .types(TypeSpec::Regex("ab[cd]".into()), TypeSpec::Regex("[abcd]*".into()))
        .distance(DistanceBound::Mean(Rational::new(1, 3)))
}

/// `a -> b` and `aa -> ba` over `{a, b}`: no single-state transducer with
/// unit outputs does both.
pub fn contradictory_spec() -> SynthesisSpec {
    SynthesisSpec::new(ab_alphabet(), 1, 1).example("a", "b").example("aa", "ba")
}
