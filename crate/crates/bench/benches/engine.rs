use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathcx_core::{build_diagram, enumerate_shapes, path_table, DeleteVariant, Strategy};

fn shapes(c: &mut Criterion) {
    c.bench_function("enumerate_shapes/10", |b| {
        b.iter(|| enumerate_shapes(black_box(10)).unwrap())
    });
}

fn diagram(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_diagram");
    group.sample_size(10);
    for n in [6, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_diagram(n, &DeleteVariant::ALL).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let d = build_diagram(10, &DeleteVariant::ALL).unwrap();
    let mut group = c.benchmark_group("path_table");
    group.sample_size(10);
    for (name, strategy, n) in [
        ("shared_prefix", Strategy::SharedPrefix, 10),
        ("per_sequence", Strategy::PerSequence, 8),
    ] {
        group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
            b.iter(|| path_table(&d, n, DeleteVariant::Standard, strategy).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, shapes, diagram, tables);
criterion_main!(benches);
