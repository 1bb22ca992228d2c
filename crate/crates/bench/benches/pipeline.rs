use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sorder_core::{
    free_trees, free_trees_with, rank_catalog, s6_formula, trees_with_bipartition, walk_moments,
    Backend, EnumerationConfig, TreeClassQuery,
};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    for n in [10, 12, 14] {
        group.bench_with_input(BenchmarkId::new("successor", n), &n, |b, &n| {
            b.iter(|| free_trees(n).unwrap())
        });
    }
    let reference = EnumerationConfig {
        backend: Backend::Reference,
        ..Default::default()
    };
    for n in [9, 11] {
        group.bench_with_input(BenchmarkId::new("reference", n), &n, |b, &n| {
            b.iter(|| free_trees_with(n, &reference).unwrap())
        });
    }
    group.finish();
}

fn moments(c: &mut Criterion) {
    let trees = free_trees(12).unwrap();
    let mut group = c.benchmark_group("moments");
    group.bench_function("walk_trace_n12", |b| {
        b.iter(|| trees.iter().map(walk_moments).count())
    });
    group.bench_function("s6_formula_n12", |b| {
        b.iter(|| trees.iter().map(s6_formula).count())
    });
    group.finish();
}

fn ranking(c: &mut Criterion) {
    let mut group = c.benchmark_group("ranking");
    group.sample_size(10);
    for (p, q) in [(5, 6), (6, 7), (7, 7)] {
        let trees = trees_with_bipartition(&TreeClassQuery::new(p, q).unwrap()).unwrap();
        group.bench_with_input(
            BenchmarkId::new("rank_class", format!("{p}_{q}")),
            &trees,
            |b, trees| b.iter(|| rank_catalog(black_box(trees.clone())).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, enumeration, moments, ranking);
criterion_main!(benches);
