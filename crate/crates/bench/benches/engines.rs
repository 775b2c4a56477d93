use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use revring::graded::Filtration;
use revring::presets;
use revring::rewrite::Strategy;

fn normal_forms(c: &mut Criterion) {
    let t6 = presets::t6();
    let p = t6.parse("x1^4*x2^3*x3^2 + Q*x2^2*x1^3*x3").unwrap();
    let mut g = c.benchmark_group("normal_form");
    for (name, s) in [("largest", Strategy::LeftmostLargest), ("leftward", Strategy::LeftmostLeftward), ("random", Strategy::Random(1))] {
        g.bench_function(name, |b| b.iter(|| t6.normal_form_with(black_box(&p), s).unwrap()));
    }
    g.finish();
}

fn confluence(c: &mut Criterion) {
    let t6 = presets::t6();
    let quot = presets::t6_quot(&revring::rat(3));
    c.bench_function("confluence/T6", |b| b.iter(|| t6.check_confluence().unwrap()));
    c.bench_function("confluence/T6_quot", |b| b.iter(|| quot.check_confluence().unwrap()));
}

fn centrality(c: &mut Criterion) {
    let t6 = presets::t6();
    let g = presets::quantum_central(&t6);
    c.bench_function("central/T6", |b| b.iter(|| t6.is_central(black_box(&g)).unwrap()));
}

fn growth(c: &mut Criterion) {
    let t5 = presets::t5();
    let filt = Filtration::from_system(&t5, &presets::t5_degree()).unwrap();
    c.bench_function("growth/T5_200", |b| b.iter(|| filt.dimensions(black_box(200)).unwrap()));
}

fn skew(c: &mut Criterion) {
    let ctx = presets::wq_symbolic();
    let r = ctx.parse_base("Q*y^2 + y^-1 - 3").unwrap();
    let s = ctx.parse_base("y^3 - Q^-1*y").unwrap();
    c.bench_function("s_identities/WQ", |b| b.iter(|| ctx.verify_s_identities(black_box(&r), black_box(&s)).unwrap()));
}

criterion_group!(benches, normal_forms, confluence, centrality, growth, skew);
criterion_main!(benches);
