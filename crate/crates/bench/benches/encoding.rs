use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use transynth::driver::prepare;
use transynth::fixtures::*;
use transynth::smt::emit_smtlib;
use transynth::{synthesize, SolverConfig, SynthesisSpec};
use transynth_bench::{examples_of, random_pair};

fn encode(c: &mut Criterion) {
    let escape = prepare(&escape_spec()).unwrap();
    c.bench_function("encode escape", |b| b.iter(|| escape.encode().unwrap()));
    let enc = escape.encode().unwrap();
    c.bench_function("emit escape", |b| b.iter(|| emit_smtlib(&enc, "QF_LIA")));
    let tags = prepare(&tag_spec()).unwrap();
    c.bench_function("encode tags", |b| b.iter(|| tags.encode().unwrap()));

    let mut group = c.benchmark_group("encode examples");
    for k in [2, 4, 6] {
        let (t, _) = random_pair(k as u64, k, 3, 1);
        let mut spec = SynthesisSpec::new(t.alphabet().clone(), k, 2);
        spec.examples = examples_of(&t, 7, 10, 12);
        let prepared = prepare(&spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &prepared, |b, p| b.iter(|| p.encode().unwrap()));
    }
    group.finish();
}

/// End to end, including the solver; skipped when it is not installed.
fn solve(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    if !cfg.is_available() {
        return;
    }
    let mut group = c.benchmark_group("synthesize");
    group.sample_size(10);
    group.bench_function("escape", |b| b.iter(|| synthesize(&escape_spec(), &cfg).unwrap()));
    group.bench_function("alternating", |b| b.iter(|| synthesize(&alternating_spec(), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, encode, solve);
criterion_main!(benches);
