use std::hint::black_box;

use cofill_bench::{points, random_cochain};
use cofill_core::geometry::max_depth;
use cofill_core::minimality::is_minimal_exact;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn coboundary(c: &mut Criterion) {
    let mut g = c.benchmark_group("coboundary");
    for (n, r) in [(16, 3), (24, 3), (32, 4)] {
        let e = random_cochain(n, r, 0.3, 1);
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_r{r}")), &e, |b, e| {
            b.iter(|| black_box(e.coboundary().unwrap()))
        });
    }
    g.finish();
}

fn coset_walk(c: &mut Criterion) {
    let mut g = c.benchmark_group("coset_walk");
    g.sample_size(10);
    // a minimal cochain forces the full walk
    for (n, r) in [(7, 2), (12, 2), (7, 3)] {
        let e = cofill_core::minimize_in_class(&random_cochain(n, r, 0.4, 2)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_r{r}")), &e, |b, e| {
            b.iter(|| black_box(is_minimal_exact(e).unwrap()))
        });
    }
    g.finish();
}

fn depth(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_depth");
    g.sample_size(10);
    for n in [6, 8, 10] {
        let p = points(n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(max_depth(p).unwrap().depth))
        });
    }
    g.finish();
}

criterion_group!(benches, coboundary, coset_walk, depth);
criterion_main!(benches);
