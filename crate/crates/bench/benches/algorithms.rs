use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use lcy_core::fp::{coset_enumerate, Presentation, DEFAULT_MAX_COSETS, DEFAULT_ORDER_BOUND};
use lcy_core::nilpotent::min_abelian_normal_index;
use lcy_core::nilpotent::rewriting::rewrite;
use lcy_core::suites::a5_wreath_z2;
use lcy_core::toric::Fan2D;

fn coset_enumeration(c: &mut Criterion) {
    let a5 = Presentation::parse("<a,b | a^2, b^3, (a*b)^5>").unwrap();
    c.bench_function("coset_enumerate A5 / trivial", |b| {
        b.iter(|| coset_enumerate(black_box(&a5), &[], DEFAULT_MAX_COSETS).unwrap())
    });
}

fn schreier_sims(c: &mut Criterion) {
    let g = a5_wreath_z2();
    c.bench_function("analyze (A5 x A5) x| Z/2", |b| {
        b.iter(|| black_box(&g).analyze(DEFAULT_ORDER_BOUND).unwrap())
    });
}

fn min_index(c: &mut Criterion) {
    c.bench_function("min_abelian_normal_index m=36 k=2", |b| {
        b.iter(|| min_abelian_normal_index(black_box(36), 2, 144).unwrap())
    });
}

fn rewriting(c: &mut Criterion) {
    let w: Vec<i32> = [2, 1, -2, -1, 3, 2, 2, -1, 1, -2, 1, 2].repeat(3);
    c.bench_function("rewrite length 36", |b| b.iter(|| rewrite(3, black_box(&w)).unwrap()));
}

fn toric(c: &mut Criterion) {
    let fan = Fan2D::new(vec![(1, 0), (0, 1), (-7, -11), (3, -8)]).unwrap();
    c.bench_function("resolve and self-intersections", |b| {
        b.iter(|| {
            let f = black_box(&fan);
            (f.resolve(), f.self_intersections())
        })
    });
}

criterion_group!(benches, coset_enumeration, schreier_sims, min_index, rewriting, toric);
criterion_main!(benches);
