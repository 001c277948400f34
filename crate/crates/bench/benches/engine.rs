use std::hint::black_box;

use axcheck_core::synth::FormulaEnumerator;
use axcheck_core::{
    corpus, is_formal_semantic, iso_classes, models_of, parse_axiom_system, synthesize_forking_formula, IsoMode,
    Signature, SimpleType, Universe,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn parse(c: &mut Criterion) {
    c.bench_function("parse/hausdorff", |b| b.iter(|| parse_axiom_system(black_box(corpus::HAUSDORFF)).unwrap()));
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("models_of");
    for (stem, n) in [("hausdorff", 2), ("reflexive", 3), ("total_order", 3), ("ba", 3)] {
        let sys = parse_axiom_system(corpus::source(stem).unwrap()).unwrap();
        let u = Universe::new(n);
        group.bench_with_input(BenchmarkId::new(stem, n), &n, |b, _| b.iter(|| models_of(&u, &sys).unwrap()));
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let sys = parse_axiom_system(corpus::REFLEXIVE).unwrap();
    let u = Universe::new(3);
    let models = models_of(&u, &sys).unwrap().models;
    for mode in [IsoMode::Tarski, IsoMode::Carnap] {
        c.bench_function(&format!("iso_classes/reflexive@3/{mode}"), |b| {
            b.iter(|| iso_classes(&u, black_box(&models), mode).unwrap())
        });
    }
}

fn synthesis(c: &mut Criterion) {
    let sig = Signature::new([("R", SimpleType::binary())]);
    let mut group = c.benchmark_group("synthesis");
    group.sample_size(10);
    group.bench_function("exhaustive<=7", |b| b.iter(|| FormulaEnumerator::exhaustive(&sig).all_up_to(7).len()));
    group.bench_function("canonical<=9", |b| b.iter(|| FormulaEnumerator::canonical(&sig).all_up_to(9).len()));

    let u = Universe::new(2);
    let formulas = FormulaEnumerator::canonical(&sig).all_up_to(6);
    group.bench_function("formality<=6", |b| {
        b.iter(|| formulas.iter().filter(|g| is_formal_semantic(&u, g, &sig, IsoMode::Tarski).unwrap().formal).count())
    });

    let equiv = parse_axiom_system(corpus::EQUIVALENCE).unwrap();
    group.bench_function("fork/equiv@2", |b| {
        b.iter(|| synthesize_forking_formula(&u, &equiv, IsoMode::Tarski, 9).unwrap())
    });
    let orders = parse_axiom_system(corpus::TOTAL_ORDER).unwrap();
    group.bench_function("no-fork/total_order@2", |b| {
        b.iter(|| synthesize_forking_formula(&u, &orders, IsoMode::Tarski, 9).unwrap())
    });
    group.finish();
}

criterion_group!(benches, parse, enumerate, isomorphism, synthesis);
criterion_main!(benches);
