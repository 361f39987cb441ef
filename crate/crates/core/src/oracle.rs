//! Brute-force oracles for every fast algorithm in the crate, plus seeded
//! instance generators. Oracles enumerate; the algorithms they check never
//! share code with them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::balance::{BalanceVerdict, SwitchingFunction, WeightedGraph};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Multigraph};
use crate::matching::{Matching, PathProfile};
use crate::matrix::IntegerMatrix;

pub const MATCHING_ORACLE_BOUND: usize = 24;
pub const SACHS_ORACLE_BOUND: usize = 14;
pub const PATH_ORACLE_PAIR_BOUND: usize = 7;
pub const BALANCE_ORACLE_BOUND: usize = 16;

/// Deterministic PRNG used by the generators, chosen so that fixtures can be
/// regenerated exactly by any implementation: the splitmix64 sequence
/// (Steele, Lea, Flood), with uniform ints taken modulo the range and
/// Bernoulli(p) decided by `(next() >> 11) * 2^-53 < p`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }
}

/// All perfect matchings by backtracking on the lowest uncovered vertex.
pub fn enumerate_perfect_matchings(g: &BipartiteGraph) -> Result<Vec<Vec<(usize, usize)>>> {
    if g.n() > MATCHING_ORACLE_BOUND {
        return Err(Error::TooLarge { size: g.n(), bound: MATCHING_ORACLE_BOUND });
    }
    let mut covered = vec![false; g.n()];
    let mut current = Vec::new();
    let mut out = Vec::new();
    fn recurse(
        g: &BipartiteGraph,
        covered: &mut [bool],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(current.clone());
            return;
        };
        covered[v] = true;
        for &w in g.neighbors(v) {
            if !covered[w] {
                covered[w] = true;
                current.push((v, w));
                recurse(g, covered, current, out);
                current.pop();
                covered[w] = false;
            }
        }
        covered[v] = false;
    }
    recurse(g, &mut covered, &mut current, &mut out);
    Ok(out)
}

/// A spanning subgraph whose components are single edges and cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SachsSubgraph {
    pub cycle_components: Vec<Vec<usize>>,
    pub k2_components: Vec<(usize, usize)>,
}

impl SachsSubgraph {
    pub fn cycle_count(&self) -> usize {
        self.cycle_components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.cycle_components.iter().map(Vec::len).sum::<usize>() + self.k2_components.len()
    }

    /// 2^{|C|} (-1)^{|C| + |E(S)|}
    pub fn weight(&self) -> BigInt {
        let c = self.cycle_count();
        let sign = if (c + self.edge_count()) % 2 == 0 { 1 } else { -1 };
        BigInt::from(sign) * (BigInt::one() << c)
    }
}

/// Enumerate all Sachs subgraphs of a simple graph given by adjacency lists.
/// The null graph contributes one empty subgraph (the 0x0 determinant is 1).
fn enumerate_sachs(n: usize, adj: &[Vec<usize>], excluded: &[bool]) -> Vec<SachsSubgraph> {
    let mut covered = excluded.to_vec();
    let mut out = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut k2s: Vec<(usize, usize)> = Vec::new();

    fn recurse(
        n: usize,
        adj: &[Vec<usize>],
        covered: &mut [bool],
        cycles: &mut Vec<Vec<usize>>,
        k2s: &mut Vec<(usize, usize)>,
        out: &mut Vec<SachsSubgraph>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(SachsSubgraph { cycle_components: cycles.clone(), k2_components: k2s.clone() });
            return;
        };
        covered[v] = true;
        // Option 1: v is one end of a K2 component.
        for &w in &adj[v] {
            if !covered[w] {
                covered[w] = true;
                k2s.push((v, w));
                recurse(n, adj, covered, cycles, k2s, out);
                k2s.pop();
                covered[w] = false;
            }
        }
        // Option 2: v is the smallest vertex of a cycle component. Grow a
        // path from v whose interior stays above v, closing back to v at
        // length >= 3. Orient by forcing the second vertex below the last to
        // avoid counting each cycle twice.
        fn grow(
            v: usize,
            path: &mut Vec<usize>,
            adj: &[Vec<usize>],
            covered: &mut [bool],
            cycles: &mut Vec<Vec<usize>>,
            k2s: &mut Vec<(usize, usize)>,
            out: &mut Vec<SachsSubgraph>,
            n: usize,
        ) {
            let last = *path.last().unwrap();
            for &w in &adj[last] {
                if w == v && path.len() >= 3 && path[1] < last {
                    cycles.push(path.clone());
                    recurse(n, adj, covered, cycles, k2s, out);
                    cycles.pop();
                }
                if w > v && !covered[w] {
                    covered[w] = true;
                    path.push(w);
                    grow(v, path, adj, covered, cycles, k2s, out, n);
                    path.pop();
                    covered[w] = false;
                }
            }
        }
        let mut path = vec![v];
        grow(v, &mut path, adj, covered, cycles, k2s, out, n);
        covered[v] = false;
    }

    recurse(n, adj, &mut covered, &mut cycles, &mut k2s, &mut out);
    out
}

fn adjacency_lists(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Harary's determinant expansion: det(A) = sum over Sachs subgraphs of
/// 2^{|C|} (-1)^{|C| + |E(S)|}. Works for any simple graph.
pub fn det_via_sachs(n: usize, edges: &[(usize, usize)]) -> Result<BigInt> {
    if n > SACHS_ORACLE_BOUND {
        return Err(Error::TooLarge { size: n, bound: SACHS_ORACLE_BOUND });
    }
    let adj = adjacency_lists(n, edges);
    let subgraphs = enumerate_sachs(n, &adj, &vec![false; n]);
    Ok(subgraphs.iter().map(SachsSubgraph::weight).sum())
}

/// Exact determinant by Bareiss fraction-free elimination; the third route
/// for determinant cross-checks.
pub fn bareiss_determinant(m: &IntegerMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Entry (i, j) of the inverse adjacency matrix of a simple graph, computed
/// through paths and Sachs subgraphs of the rest: off-diagonal entries sum
/// 2^{|C|} (-1)^{|C| + |E(S) ∪ E(P)|} over paths P from i to j and Sachs
/// subgraphs S of G \ V(P), divided by det(A); diagonal entries are
/// det(A_{i,i}) / det(A).
pub fn inverse_entry_via_paths_sachs(
    n: usize,
    edges: &[(usize, usize)],
    i: usize,
    j: usize,
) -> Result<BigRational> {
    if n > SACHS_ORACLE_BOUND {
        return Err(Error::TooLarge { size: n, bound: SACHS_ORACLE_BOUND });
    }
    let det = det_via_sachs(n, edges)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let adj = adjacency_lists(n, edges);
    if i == j {
        // det(A_{i,i}) = Sachs sum over G with vertex i deleted.
        let mut excluded = vec![false; n];
        excluded[i] = true;
        let minor: BigInt = enumerate_sachs(n, &adj, &excluded)
            .iter()
            .map(SachsSubgraph::weight)
            .sum();
        return Ok(BigRational::new(minor, det));
    }

    // Enumerate simple paths i -> j; for each, Sachs subgraphs of the rest.
    let mut total = BigInt::zero();
    let mut on_path = vec![false; n];
    on_path[i] = true;
    let mut path = vec![i];
    fn dfs(
        n: usize,
        adj: &[Vec<usize>],
        j: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        total: &mut BigInt,
    ) {
        let last = *path.last().unwrap();
        if last == j {
            let rest: BigInt = enumerate_sachs(n, adj, on_path).iter().map(SachsSubgraph::weight).sum();
            if !rest.is_zero() {
                let path_edges = path.len() - 1;
                // |E(S) ∪ E(P)| = |E(S)| + |E(P)|: shift each Sachs weight's
                // sign by the path length.
                let shift = if path_edges % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                *total += shift * rest;
            }
            return;
        }
        for &w in &adj[last] {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                dfs(n, adj, j, path, on_path, total);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    dfs(n, &adj, j, &mut path, &mut on_path, &mut total);
    Ok(BigRational::new(total, det))
}

/// Exhaustive DFS over simple paths between i and j, keeping those whose
/// edge set intersected with M perfectly matches the path.
pub fn enumerate_alternating_paths(
    g: &BipartiteGraph,
    m: &Matching,
    i: usize,
    j: usize,
) -> Result<PathProfile> {
    if m.len() > PATH_ORACLE_PAIR_BOUND {
        return Err(Error::TooLarge { size: m.len(), bound: PATH_ORACLE_PAIR_BOUND });
    }
    if i == j {
        return Err(Error::SameVertex);
    }
    let in_m: BTreeSet<(usize, usize)> = m.edges().iter().copied().collect();
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    let mut on_path = vec![false; g.n()];
    on_path[i] = true;
    let mut path = vec![i];

    fn is_alternating(path: &[usize], in_m: &BTreeSet<(usize, usize)>) -> Option<usize> {
        // E(P) ∩ M must cover every path vertex exactly once.
        let mut covered = vec![false; path.len()];
        let mut non_matching = 0usize;
        for t in 0..path.len() - 1 {
            let (u, v) = (path[t], path[t + 1]);
            if in_m.contains(&(u.min(v), u.max(v))) {
                if covered[t] || covered[t + 1] {
                    return None;
                }
                covered[t] = true;
                covered[t + 1] = true;
            } else {
                non_matching += 1;
            }
        }
        if covered.iter().all(|&c| c) {
            Some(non_matching)
        } else {
            None
        }
    }

    fn dfs(
        g: &BipartiteGraph,
        j: usize,
        in_m: &BTreeSet<(usize, usize)>,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        even: &mut BigInt,
        odd: &mut BigInt,
    ) {
        let last = *path.last().unwrap();
        if last == j {
            if let Some(non_matching) = is_alternating(path, in_m) {
                if non_matching % 2 == 0 {
                    *even += 1;
                } else {
                    *odd += 1;
                }
            }
            return;
        }
        for &w in g.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                dfs(g, j, in_m, path, on_path, even, odd);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    dfs(g, j, &in_m, &mut path, &mut on_path, &mut even, &mut odd);
    Ok(PathProfile::from_counts(even, odd))
}

/// Try all 2^|V| switchings (the smallest vertex pinned to +1; a global flip
/// changes nothing). The unbalanced witness is a shortest negative cycle
/// found through the signed double cover, independent of the fast check.
pub fn balance_exhaustive(w: &WeightedGraph) -> Result<BalanceVerdict> {
    let n = w.n();
    if n > BALANCE_ORACLE_BOUND {
        return Err(Error::TooLarge { size: n, bound: BALANCE_ORACLE_BOUND });
    }
    if n == 0 {
        return Ok(BalanceVerdict::Balanced(SwitchingFunction::all_positive(0)));
    }
    let edges: Vec<(usize, usize, bool)> =
        w.edges().iter().map(|(u, v, wt)| (*u, *v, wt.is_negative())).collect();
    'mask: for mask in 0..(1u64 << (n - 1)) {
        let sign_bit = |v: usize| -> bool {
            if v == 0 {
                false
            } else {
                (mask >> (v - 1)) & 1 == 1
            }
        };
        for &(u, v, neg) in &edges {
            if (sign_bit(u) ^ sign_bit(v)) != neg {
                continue 'mask;
            }
        }
        let zeta = SwitchingFunction::new((0..n).map(|v| if sign_bit(v) { -1 } else { 1 }).collect())?;
        return Ok(BalanceVerdict::Balanced(zeta));
    }
    let cycle = shortest_negative_cycle(w).expect("unbalanced graph has a negative cycle");
    Ok(BalanceVerdict::Unbalanced { cycle })
}

/// Shortest negative cycle via BFS in the signed double cover: a negative
/// cycle through v is a shortest path from (v, +) to (v, -); the global
/// minimum over v is a simple cycle.
pub fn shortest_negative_cycle(w: &WeightedGraph) -> Option<Vec<usize>> {
    let n = w.n();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        // Nodes 2v (+) and 2v+1 (-).
        let mut parent = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        let mut queue = std::collections::VecDeque::from([2 * start]);
        seen[2 * start] = true;
        'bfs: while let Some(x) = queue.pop_front() {
            let (v, s) = (x / 2, x % 2);
            for (u, wt) in w.neighbors(v) {
                let t = if wt.is_negative() { 1 - s } else { s };
                let y = 2 * u + t;
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                    if y == 2 * start + 1 {
                        break 'bfs;
                    }
                }
            }
        }
        if seen[2 * start + 1] {
            let mut walk = Vec::new();
            let mut x = 2 * start + 1;
            while x != usize::MAX {
                walk.push(x / 2);
                x = parent[x];
            }
            walk.pop(); // drop the repeated start
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
    }
    // The globally shortest projection is simple.
    best
}

/// Contract each matching edge; parallel edges kept, loops cannot arise.
/// Also reports two-colorability of the quotient.
pub fn quotient_by_matching(g: &BipartiteGraph, m: &Matching) -> (Multigraph, bool) {
    let pairs = m.pairs(g);
    let mut pair_of = vec![usize::MAX; g.n()];
    for (idx, &(r, c)) in pairs.iter().enumerate() {
        pair_of[r] = idx;
        pair_of[c] = idx;
    }
    let mut q = Multigraph::new(pairs.len());
    for &(u, v) in g.edges() {
        let (pu, pv) = (pair_of[u], pair_of[v]);
        if pu != pv {
            q.add_edge(pu, pv);
        }
    }
    let bip = q.is_bipartite();
    (q, bip)
}

/// Kronecker product of two unit lower triangular 0/1 matrices, plus the
/// bipartite graph it assembles to. The product is again unit lower
/// triangular 0/1, hence a unique-perfect-matching graph.
pub fn kronecker_product(b1: &IntegerMatrix, b2: &IntegerMatrix) -> Result<(IntegerMatrix, BipartiteGraph)> {
    if !b1.is_unit_lower_triangular_01() || !b2.is_unit_lower_triangular_01() {
        return Err(Error::NotUnitTriangular);
    }
    let prod = b1.kronecker(b2);
    let g = BipartiteGraph::from_unit_lower_triangular(&prod)?;
    Ok((prod, g))
}

/// Each strictly-lower entry of a unit lower triangular matrix is set with
/// probability p; triangularity forces the unique perfect matching.
pub fn random_unique_pm_graph(n_pairs: usize, p: f64, seed: u64) -> BipartiteGraph {
    let mut rng = SplitMix64::new(seed);
    let mut b = IntegerMatrix::identity(n_pairs);
    for i in 0..n_pairs {
        for j in 0..i {
            if rng.bernoulli(p) {
                b.set(i, j, BigInt::one());
            }
        }
    }
    let g = BipartiteGraph::from_unit_lower_triangular(&b).expect("construction is triangular");
    debug_assert!(crate::matching::unique_perfect_matching(&g).is_ok());
    g
}

/// Grow a tree by attaching a new matched pendant edge to a uniformly random
/// existing vertex. Trees with perfect matchings have them uniquely.
pub fn random_matched_tree(n_pairs: usize, seed: u64) -> BipartiteGraph {
    assert!(n_pairs >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut edges = vec![(0usize, 1usize)];
    let mut n = 2usize;
    for _ in 1..n_pairs {
        let attach = rng.below(n);
        let x = n;
        let y = n + 1;
        edges.push((attach, x));
        edges.push((x, y));
        n += 2;
    }
    let g = BipartiteGraph::new(n, &edges).expect("grown tree is simple and bipartite");
    debug_assert!(crate::matching::unique_perfect_matching(&g).is_ok());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::matching::unique_perfect_matching;

    #[test]
    fn matching_counts() {
        let c4 = parse_graph("4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n").unwrap();
        assert_eq!(enumerate_perfect_matchings(&c4).unwrap().len(), 2);
        let p4 = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(enumerate_perfect_matchings(&p4).unwrap().len(), 1);
        let c6 = parse_graph("6 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\n").unwrap();
        assert_eq!(enumerate_perfect_matchings(&c6).unwrap().len(), 2);
    }

    #[test]
    fn sachs_determinants() {
        // K2: one Sachs subgraph, |C|=0, |E|=1.
        assert_eq!(det_via_sachs(2, &[(0, 1)]).unwrap(), BigInt::from(-1));
        // C4: two matchings (+1 each) and the 4-cycle (2 * (-1)^5 = -2).
        assert_eq!(det_via_sachs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), BigInt::from(0));
        // C3: only the triangle, 2 * (-1)^4 = 2.
        assert_eq!(det_via_sachs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), BigInt::from(2));
        // Null graph: empty Sachs subgraph contributes 1.
        assert_eq!(det_via_sachs(0, &[]).unwrap(), BigInt::from(1));
        // P3 has no Sachs subgraph at all.
        assert_eq!(det_via_sachs(3, &[(0, 1), (1, 2)]).unwrap(), BigInt::from(0));
    }

    #[test]
    fn sachs_matches_bareiss_on_small_graphs() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]),
            (6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]),
        ];
        for (n, edges) in cases {
            let mut a = IntegerMatrix::zero(n, n);
            for &(u, v) in &edges {
                a.set(u, v, BigInt::one());
                a.set(v, u, BigInt::one());
            }
            assert_eq!(det_via_sachs(n, &edges).unwrap(), bareiss_determinant(&a), "n={n}");
        }
    }

    #[test]
    fn k3_inverse_entries() {
        let edges = [(0, 1), (1, 2), (0, 2)];
        // Vertices relabeled 0-based from the 1-based statement.
        let w = inverse_entry_via_paths_sachs(3, &edges, 0, 1).unwrap();
        assert_eq!(w, BigRational::new(BigInt::one(), BigInt::from(2)));
        let d = inverse_entry_via_paths_sachs(3, &edges, 0, 0).unwrap();
        assert_eq!(d, BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert!(matches!(
            inverse_entry_via_paths_sachs(3, &[(0, 1), (1, 2)], 0, 1),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn p4_inverse_via_oracle_matches() {
        let w = inverse_entry_via_paths_sachs(4, &[(0, 1), (1, 2), (2, 3)], 0, 3).unwrap();
        assert_eq!(w, BigRational::from(BigInt::from(-1)));
    }

    #[test]
    fn alternating_path_profiles() {
        let g = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        let m = unique_perfect_matching(&g).unwrap();
        let p = enumerate_alternating_paths(&g, &m, 0, 3).unwrap();
        assert_eq!((p.tau, p.tau_e, p.tau_o), (1.into(), 0.into(), 1.into()));
        let p = enumerate_alternating_paths(&g, &m, 0, 1).unwrap();
        assert_eq!((p.tau, p.tau_e, p.tau_o), (1.into(), 1.into(), 0.into()));
        let p = enumerate_alternating_paths(&g, &m, 1, 2).unwrap();
        assert!(p.tau.is_zero());
    }

    #[test]
    fn exhaustive_balance_small() {
        let pos = WeightedGraph::new(2, vec![(0, 1, BigInt::from(2))]).unwrap();
        assert!(matches!(balance_exhaustive(&pos).unwrap(), BalanceVerdict::Balanced(_)));
        let p4 = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        let m = unique_perfect_matching(&p4).unwrap();
        let p4_inv = crate::balance::inverse_graph(&p4, &m).unwrap();
        assert!(matches!(balance_exhaustive(&p4_inv).unwrap(), BalanceVerdict::Balanced(_)));
        let neg4 = WeightedGraph::new(
            4,
            vec![
                (0, 1, BigInt::from(1)),
                (1, 2, BigInt::from(1)),
                (2, 3, BigInt::from(1)),
                (0, 3, BigInt::from(-1)),
            ],
        )
        .unwrap();
        match balance_exhaustive(&neg4).unwrap() {
            BalanceVerdict::Unbalanced { cycle } => {
                assert_eq!(cycle.len(), 4);
                assert_eq!(neg4.cycle_sign(&cycle), Some(-1));
            }
            other => panic!("expected unbalanced, got {other:?}"),
        }
    }

    #[test]
    fn quotient_examples() {
        let p4 = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        let m = unique_perfect_matching(&p4).unwrap();
        let (q, bip) = quotient_by_matching(&p4, &m);
        assert_eq!(q.n(), 2);
        assert_eq!(q.total_edges(), 1);
        assert!(bip);

        let k2 = parse_graph("2 1\ne 0 1\n").unwrap();
        let m = unique_perfect_matching(&k2).unwrap();
        let (q, bip) = quotient_by_matching(&k2, &m);
        assert_eq!(q.n(), 1);
        assert_eq!(q.total_edges(), 0);
        assert!(bip);
    }

    #[test]
    fn kronecker_examples() {
        let l = IntegerMatrix::from_rows(&[&[1, 0], &[1, 1]]);
        let (p, g) = kronecker_product(&l, &l).unwrap();
        assert_eq!(p.nonzero_entries().len(), 9);
        assert!(p.is_unit_lower_triangular_01());
        assert!(unique_perfect_matching(&g).is_ok());

        let one = IntegerMatrix::identity(1);
        let (same, _) = kronecker_product(&l, &one).unwrap();
        assert_eq!(same, l);

        let id3 = IntegerMatrix::identity(3);
        let (id9, _) = kronecker_product(&id3, &id3).unwrap();
        assert_eq!(id9, IntegerMatrix::identity(9));

        let bad = IntegerMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(kronecker_product(&bad, &l), Err(Error::NotUnitTriangular)));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_unique_pm_graph(5, 0.5, 42);
        let b = random_unique_pm_graph(5, 0.5, 42);
        assert_eq!(a, b);
        assert_ne!(a, random_unique_pm_graph(5, 0.5, 43));

        let t1 = random_matched_tree(6, 7);
        let t2 = random_matched_tree(6, 7);
        assert_eq!(t1, t2);
    }

    #[test]
    fn generator_degenerate_densities() {
        let g = random_unique_pm_graph(4, 0.0, 1);
        assert_eq!(g.edge_count(), 4); // disjoint K2s
        let g = random_unique_pm_graph(4, 1.0, 1);
        assert_eq!(g.edge_count(), 4 + 6); // full lower triangle
        unique_perfect_matching(&g).unwrap();
    }

    #[test]
    fn matched_trees_are_trees_with_unique_pm() {
        for seed in 0..20 {
            let g = random_matched_tree(5, seed);
            assert_eq!(g.edge_count(), g.n() - 1);
            let m = unique_perfect_matching(&g).unwrap();
            assert_eq!(m.len() * 2, g.n());
        }
        let k2 = random_matched_tree(1, 9);
        assert_eq!(k2.n(), 2);
        // The only 4-vertex tree with a perfect matching is the path.
        for seed in 0..10 {
            let t = random_matched_tree(2, seed);
            let degs: Vec<usize> = (0..4).map(|v| t.degree(v)).collect();
            let mut sorted = degs.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![1, 1, 2, 2], "seed {seed} gave a non-path tree");
        }
    }
}
