use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use einstein_randers::{buchberger, isolate_roots, refine_root, solve_space, Space};
use einstein_randers_bench::{elimination_a4, eps, saturated_basis, twisted_cubic};

fn groebner_benches(c: &mut Criterion) {
    let cubic = twisted_cubic();
    c.bench_function("buchberger_twisted_cubic", |b| {
        b.iter(|| buchberger(black_box(&cubic)).unwrap())
    });

    let a4 = saturated_basis(Space::E6A4);
    c.bench_function("buchberger_e6_a4", |b| {
        b.iter(|| buchberger(black_box(&a4)).unwrap())
    });

    let a1 = saturated_basis(Space::E6A1);
    c.bench_function("buchberger_e6_a1", |b| {
        b.iter(|| buchberger(black_box(&a1)).unwrap())
    });
}

fn root_benches(c: &mut Criterion) {
    let poly = elimination_a4();
    c.bench_function("isolate_roots_degree8", |b| {
        b.iter(|| isolate_roots(black_box(&poly)).unwrap())
    });

    let boxes = isolate_roots(&poly).unwrap();
    let tol = eps(15);
    c.bench_function("refine_root_to_1e15", |b| {
        b.iter(|| refine_root(black_box(&poly), black_box(&boxes[0]), &tol).unwrap())
    });
}

fn solve_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let tol = eps(12);
    group.bench_function("e6_a4_full_pipeline", |b| {
        b.iter(|| solve_space(black_box(Space::E6A4), &tol).unwrap())
    });
    group.bench_function("e6_a1_full_pipeline", |b| {
        b.iter(|| solve_space(black_box(Space::E6A1), &tol).unwrap())
    });
    group.finish();
}

criterion_group!(benches, groebner_benches, root_benches, solve_benches);
criterion_main!(benches);
