use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;

use ginv_core::balance::{is_balanced, WeightedGraph};
use ginv_core::oracle::SplitMix64;

/// Random graph with a planted switching, so it is always balanced and the
/// BFS has to traverse everything.
fn planted_balanced(n: usize, edges: usize, seed: u64) -> WeightedGraph {
    let mut rng = SplitMix64::new(seed);
    let signs: Vec<i64> = (0..n).map(|_| if rng.bernoulli(0.5) { -1 } else { 1 }).collect();
    let mut raw: Vec<(usize, usize)> = Vec::with_capacity(edges + 64);
    while raw.len() < edges {
        let u = rng.below(n);
        let v = rng.below(n);
        if u != v {
            raw.push((u.min(v), u.max(v)));
        }
    }
    raw.sort_unstable();
    raw.dedup();
    let weighted = raw
        .into_iter()
        .map(|(u, v)| {
            let magnitude = 1 + rng.below(9) as i64;
            (u, v, BigInt::from(magnitude * signs[u] * signs[v]))
        })
        .collect();
    WeightedGraph::new(n, weighted).unwrap()
}

fn bench_balance(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_balanced");
    group.sample_size(20);
    for edges in [10_000usize, 100_000, 1_000_000] {
        let w = planted_balanced(edges / 10, edges, 23);
        group.bench_with_input(BenchmarkId::from_parameter(edges), &w, |b, w| {
            b.iter(|| match is_balanced(w) {
                ginv_core::balance::BalanceVerdict::Balanced(z) => z.len(),
                ginv_core::balance::BalanceVerdict::Unbalanced { cycle } => cycle.len(),
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_balance);
criterion_main!(benches);
