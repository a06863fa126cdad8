use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperc_core::oracle::{check_triangle, estimate_r, GridSpec};
use hyperc_core::par::with_threads;
use hyperc_core::solver::intersect_h_curves;
use hyperc_core::ExponentPair;

fn modes() -> [(&'static str, usize); 2] {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    [("sequential", 1), ("parallel", all)]
}

fn bench_intersection(c: &mut Criterion) {
    let mut group = c.benchmark_group("intersect_h_curves");
    for (name, threads) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| {
                with_threads(t, || {
                    intersect_h_curves(black_box(-0.3), black_box(0.5), 1e-12)
                })
            })
        });
    }
    group.finish();
}

fn bench_triangle(c: &mut Criterion) {
    let pair = ExponentPair::new(1.5, 3.0).unwrap();
    let grid = GridSpec::new(1024, 128, 0).unwrap();
    let mut group = c.benchmark_group("check_triangle");
    group.sample_size(20);
    for (name, threads) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| with_threads(t, || check_triangle(&pair, black_box(0.3), &grid)))
        });
    }
    group.finish();
}

fn bench_estimate(c: &mut Criterion) {
    let pair = ExponentPair::new(2.0, 4.0).unwrap();
    let grid = GridSpec::default();
    let mut group = c.benchmark_group("estimate_r");
    group.sample_size(10);
    for (name, threads) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| with_threads(t, || estimate_r(&pair, 1e-8, &grid)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_intersection, bench_triangle, bench_estimate);
criterion_main!(benches);
