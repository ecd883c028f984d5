use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fproots::{find_all_roots, find_one_root, RootFindConfig};
use fproots_bench::split;

const P: u64 = 10_007;

fn all_roots(c: &mut Criterion) {
    let cfg = RootFindConfig::default();
    let mut group = c.benchmark_group("find_all_roots");
    group.sample_size(10);
    for n in [16usize, 32, 64, 128] {
        let f = split(P, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| find_all_roots(black_box(&f), &cfg).unwrap())
        });
    }
    group.finish();
}

fn one_root(c: &mut Criterion) {
    let cfg = RootFindConfig::default();
    let mut group = c.benchmark_group("find_one_root");
    group.sample_size(20);
    for (p, n) in [(10_007u64, 64usize), (1_000_003, 64), (1_000_003, 256)] {
        let f = split(p, n);
        group.bench_with_input(BenchmarkId::new(p.to_string(), n), &n, |bench, _| {
            bench.iter(|| find_one_root(black_box(&f), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, all_roots, one_root);
criterion_main!(benches);
