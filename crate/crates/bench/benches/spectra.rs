use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eigenflow_core::spectra::{
    build_char_poly, build_eigenset, find_roots, SequenceFamily, DEFAULT_TOLERANCE,
};
use eigenflow_core::stats::{bin_histogram, unit_circle_table, TABLE_SIZES};

const FIB: SequenceFamily = SequenceFamily::Fibonacci;

fn roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_roots");
    for n in [10, 50, 200] {
        let p = build_char_poly(FIB, n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| find_roots(black_box(p), DEFAULT_TOLERANCE).unwrap())
        });
    }
    g.finish();
}

fn eigenset(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_eigenset");
    g.sample_size(10);
    for n in [50, 150] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_eigenset(FIB, black_box(n), DEFAULT_TOLERANCE).unwrap())
        });
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let es = build_eigenset(FIB, 500, DEFAULT_TOLERANCE).unwrap();
    c.bench_function("unit_circle_table/500", |b| {
        b.iter(|| unit_circle_table(black_box(&es), 0.01, &TABLE_SIZES).unwrap())
    });
    c.bench_function("bin_histogram/500", |b| {
        b.iter(|| bin_histogram(black_box(&es), 500, 0.49, 0.02, 58).unwrap())
    });
}

criterion_group!(benches, roots, eigenset, tables);
criterion_main!(benches);
