use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsmoments_core::{
    binomial_pow_series, factorial_moments_recurrence, log_inv_series, moment_series, simulate, MomentMode, PgfEngine,
    PivotCostModel, SimConfig,
};

fn series_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    for order in [100usize, 400] {
        let a = log_inv_series(order);
        let b = binomial_pow_series(2, order).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |bench, _| {
            bench.iter(|| black_box(a.mul(&b)))
        });
    }
    group.finish();
}

fn recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("moment_recurrence");
    group.sample_size(10);
    group.bench_function("exact n=100 s=3", |b| {
        b.iter(|| factorial_moments_recurrence(black_box(100), 3, MomentMode::Exact).unwrap())
    });
    group.bench_function("float n=2000 s=3", |b| {
        b.iter(|| factorial_moments_recurrence(black_box(2000), 3, MomentMode::Float).unwrap())
    });
    group.bench_function("series s=2 order=200", |b| {
        b.iter(|| moment_series(2, black_box(200)).unwrap())
    });
    group.finish();
}

fn pgf(c: &mut Criterion) {
    let mut group = c.benchmark_group("pgf");
    group.sample_size(10);
    for n in [20usize, 40] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| PgfEngine::new(PivotCostModel::NMinusOne).distribution(n).unwrap())
        });
    }
    group.finish();
}

fn sim(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    for shards in [1u32, 4] {
        let cfg = SimConfig::new(128, 20_000, 1).with_shards(shards);
        group.bench_with_input(BenchmarkId::new("n=128", shards), &cfg, |b, cfg| {
            b.iter(|| simulate(cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, series_mul, recurrence, pgf, sim);
criterion_main!(benches);
