use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ginv_core::balance::analyze;
use ginv_core::linalg::{invert_unit_lower_triangular, permute_to_triangular};
use ginv_core::matching::unique_perfect_matching;
use ginv_core::oracle::random_unique_pm_graph;

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("unique_perfect_matching");
    for pairs in [100usize, 400, 1000] {
        let g = random_unique_pm_graph(pairs, 4.0 / pairs as f64, 11);
        group.bench_with_input(BenchmarkId::from_parameter(pairs), &g, |b, g| {
            b.iter(|| unique_perfect_matching(g).unwrap())
        });
    }
    group.finish();
}

fn bench_invert(c: &mut Criterion) {
    let mut group = c.benchmark_group("invert_triangular");
    for pairs in [100usize, 400, 1000] {
        let g = random_unique_pm_graph(pairs, 4.0 / pairs as f64, 13);
        let m = unique_perfect_matching(&g).unwrap();
        let tri = permute_to_triangular(&g, &m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(pairs), &tri.l, |b, l| {
            b.iter(|| invert_unit_lower_triangular(l).unwrap())
        });
    }
    group.finish();
}

fn bench_analyze(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze_end_to_end");
    for pairs in [50usize, 200] {
        let g = random_unique_pm_graph(pairs, 0.1, 17);
        group.bench_with_input(BenchmarkId::from_parameter(pairs), &g, |b, g| {
            b.iter(|| analyze(g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_matching, bench_invert, bench_analyze);
criterion_main!(benches);
