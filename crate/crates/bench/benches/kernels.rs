//! Timings for the three Mittag-Leffler evaluation regimes, the singular
//! quadrature kernel, and one full identity verification.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fracineq_core::corpus::lookup;
use fracineq_core::identity::{verify_lemma, LemmaInstance};
use fracineq_core::quad::{integrate_singular, QuadSpec, SingularKernel};
use fracineq_core::special::mittag_leffler;

fn bench_mittag_leffler(c: &mut Criterion) {
    let mut group = c.benchmark_group("mittag_leffler");
    // one argument per internal evaluation strategy
    group.bench_function("series (alpha=0.5, z=-1)", |b| {
        b.iter(|| mittag_leffler(black_box(0.5), black_box(-1.0)).unwrap())
    });
    group.bench_function("spectral (alpha=0.5, z=-4)", |b| {
        b.iter(|| mittag_leffler(black_box(0.5), black_box(-4.0)).unwrap())
    });
    group.bench_function("asymptotic (alpha=0.5, z=-15)", |b| {
        b.iter(|| mittag_leffler(black_box(0.5), black_box(-15.0)).unwrap())
    });
    group.finish();
}

fn bench_singular_quadrature(c: &mut Criterion) {
    let spec = QuadSpec::default();
    c.bench_function("integrate_singular exp, right power, alpha=0.5", |b| {
        b.iter(|| {
            integrate_singular(
                |x: f64| x.exp(),
                black_box(0.0),
                black_box(1.0),
                SingularKernel::RightPower,
                black_box(0.5),
                &spec,
            )
            .unwrap()
        })
    });
}

fn bench_identity(c: &mut Criterion) {
    let f = lookup("quadratic").unwrap();
    c.bench_function("verify_lemma quadratic [0,1] alpha=0.5", |b| {
        b.iter(|| {
            let inst = LemmaInstance::new(&f, black_box(0.0), black_box(1.0), black_box(0.5))
                .unwrap();
            verify_lemma(&inst).unwrap()
        })
    });
}

criterion_group!(benches, bench_mittag_leffler, bench_singular_quadrature, bench_identity);
criterion_main!(benches);
