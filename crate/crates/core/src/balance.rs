//! The weighted inverse graph, balance of weighted graphs via switching,
//! negative-cycle certificates, and the end-to-end decision: a non-negative
//! diagonal similarity of B^-1 or an odd-flower obstruction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::linalg::{det_adjacency, invert_unit_lower_triangular, permute_to_triangular, TriangularForm};
use crate::matching::{flower_check, unique_perfect_matching, FlowerCertificate, Matching};
use crate::matrix::IntegerMatrix;

/// Simple undirected graph with nonzero exact-integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    /// Sorted (u, v, w) with u < v and w != 0.
    edges: Vec<(usize, usize, BigInt)>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge index)
    index: BTreeMap<(usize, usize), usize>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, BigInt)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize, BigInt)> = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if w.is_zero() {
                return Err(Error::InvalidGraph(format!("zero weight on edge {u}-{v}")));
            }
            norm.push((u.min(v), u.max(v), w));
        }
        norm.sort_unstable_by_key(|e| (e.0, e.1));
        if norm.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph("parallel weighted edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut index = BTreeMap::new();
        for (i, &(u, v, _)) in norm.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
            index.insert((u, v), i);
        }
        Ok(WeightedGraph { n, edges: norm, adj, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, BigInt)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&BigInt> {
        self.index.get(&(u.min(v), u.max(v))).map(|&i| &self.edges[i].2)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.adj[v].iter().map(|&(w, i)| (w, &self.edges[i].2))
    }

    /// Symmetric adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.n, self.n);
        for &(u, v, ref w) in &self.edges {
            m.set(u, v, w.clone());
            m.set(v, u, w.clone());
        }
        m
    }

    /// Read a weighted graph off a symmetric integer matrix with zero
    /// diagonal.
    pub fn from_adjacency_matrix(m: &IntegerMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::InvalidMatrix("weighted adjacency must be symmetric".into()));
        }
        let n = m.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let w = m.get(i, j);
                if !w.is_zero() {
                    edges.push((i, j, w.clone()));
                }
            }
        }
        WeightedGraph::new(n, edges)
    }

    /// Weight product sign of a vertex cycle; None if some step is missing.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Option<i8> {
        let mut sign = 1i8;
        for i in 0..cycle.len() {
            let w = self.weight(cycle[i], cycle[(i + 1) % cycle.len()])?;
            if w.is_negative() {
                sign = -sign;
            }
        }
        Some(sign)
    }
}

/// ζ: V -> {-1, +1}, the vertex form of a ±1 diagonal matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingFunction(Vec<i8>);

impl SwitchingFunction {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(pos) = signs.iter().position(|s| *s != 1 && *s != -1) {
            return Err(Error::PreconditionViolated(format!("ζ({pos}) must be ±1")));
        }
        Ok(SwitchingFunction(signs))
    }

    pub fn all_positive(n: usize) -> Self {
        SwitchingFunction(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> i8 {
        self.0[v]
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }
}

/// Either a switching function positivizing every weight, or a cycle with an
/// odd number of negative edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceVerdict {
    Balanced(SwitchingFunction),
    Unbalanced { cycle: Vec<usize> },
}

/// Edgewise switched graph: w'(uv) = ζ(u) w(uv) ζ(v). Applying the same ζ
/// twice is the identity.
pub fn apply_switching(w: &WeightedGraph, zeta: &SwitchingFunction) -> Result<WeightedGraph> {
    if zeta.len() < w.n() {
        return Err(Error::MissingVertex(zeta.len()));
    }
    let edges = w
        .edges()
        .iter()
        .map(|(u, v, wt)| {
            let s = zeta.get(*u) * zeta.get(*v);
            (*u, *v, if s == 1 { wt.clone() } else { -wt })
        })
        .collect();
    WeightedGraph::new(w.n(), edges)
}

/// Decide balance in O(n + m): a parity BFS that forces equal signs across
/// positive edges and opposite signs across negative ones. This is the
/// positive-edge contraction plus two-coloring of the quotient, done in one
/// pass. Balanced verdicts are normalized so the smallest vertex of each
/// component gets +1; unbalanced ones return the fundamental cycle of the
/// first violating edge, which has a negative weight product.
pub fn is_balanced(w: &WeightedGraph) -> BalanceVerdict {
    let n = w.n();
    let mut sign: Vec<i8> = vec![0; n];
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut depth: Vec<usize> = vec![0; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for (v, wt) in w.neighbors(u) {
                let expected = if wt.is_negative() { -sign[u] } else { sign[u] };
                if sign[v] == 0 {
                    sign[v] = expected;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if sign[v] != expected {
                    let cycle = tree_cycle(u, v, &parent, &depth);
                    debug_assert_eq!(w.cycle_sign(&cycle), Some(-1));
                    return BalanceVerdict::Unbalanced { cycle };
                }
            }
        }
    }
    let zeta = SwitchingFunction(sign);
    debug_assert!(w
        .edges()
        .iter()
        .all(|(u, v, wt)| (zeta.get(*u) * zeta.get(*v) == 1) == wt.is_positive()));
    BalanceVerdict::Balanced(zeta)
}

/// Close the BFS-tree paths from u and v at their lowest common ancestor.
fn tree_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    up_b.pop();
    up_a.extend(up_b.into_iter().rev());
    up_a
}

/// Shrink a negative cycle to a chordless one by repeated chord splitting:
/// a chord cuts the cycle into two, and exactly one of the halves stays
/// negative because the two signs multiply to the original cycle's sign.
pub fn chordless_negative_cycle(w: &WeightedGraph) -> Result<Vec<usize>> {
    let mut cycle = match is_balanced(w) {
        BalanceVerdict::Unbalanced { cycle } => cycle,
        BalanceVerdict::Balanced(_) => {
            return Err(Error::PreconditionViolated("graph is balanced, no negative cycle exists".into()))
        }
    };
    debug_assert_eq!(w.cycle_sign(&cycle), Some(-1));
    'shrink: loop {
        let k = cycle.len();
        for i in 0..k {
            for j in (i + 2)..k {
                if i == 0 && j == k - 1 {
                    continue; // consecutive around the wrap
                }
                if w.weight(cycle[i], cycle[j]).is_some() {
                    // Split along the chord; keep the negative half.
                    let first: Vec<usize> = cycle[i..=j].to_vec();
                    let mut second: Vec<usize> = cycle[j..].to_vec();
                    second.extend_from_slice(&cycle[..=i]);
                    let keep = if w.cycle_sign(&first) == Some(-1) { first } else { second };
                    debug_assert_eq!(w.cycle_sign(&keep), Some(-1));
                    cycle = keep;
                    continue 'shrink;
                }
            }
        }
        return Ok(cycle);
    }
}

/// The weighted inverse graph (G^-1, w): vertex set V(G), an edge ij with
/// weight (A^-1)_{ij} wherever that entry is nonzero. Computed through the
/// triangular matrix route; the weights coincide with signed alternating-path
/// counts.
pub fn inverse_graph(g: &BipartiteGraph, m: &Matching) -> Result<WeightedGraph> {
    let tri = permute_to_triangular(g, m)?;
    let inv = invert_unit_lower_triangular(&tri.l)?;
    inverse_graph_from_parts(g, &tri, &inv)
}

pub(crate) fn inverse_graph_from_parts(
    g: &BipartiteGraph,
    tri: &TriangularForm,
    b_inv: &IntegerMatrix,
) -> Result<WeightedGraph> {
    let k = tri.pair_order.len();
    let mut edges = Vec::new();
    for q in 0..k {
        for p in 0..=q {
            // w(r_p, c_q) = (B^-1)[q][p]: row block R, column block C of A^-1.
            let val = b_inv.get(q, p);
            if !val.is_zero() {
                let (r, _) = tri.pair_order[p];
                let (_, c) = tri.pair_order[q];
                edges.push((r, c, val.clone()));
            }
        }
    }
    WeightedGraph::new(g.n(), edges)
}

/// Outcome of the end-to-end decision for one graph.
#[derive(Debug, Clone)]
pub enum InverseKind {
    /// D B^-1 D = B^+ is entrywise non-negative; ζ is the vertex switching
    /// behind D (constant on matched pairs).
    Nonnegative { b_plus: IntegerMatrix, d: Vec<i8>, zeta: SwitchingFunction },
    /// The inverse graph is unbalanced; S = vertices of a chordless negative
    /// cycle span an odd flower.
    OddFlower(FlowerCertificate),
}

/// Everything the pipeline learns about one graph, kept together so reports
/// can trace matrix indices back to vertices.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub matching: Matching,
    pub det: i64,
    pub tri: TriangularForm,
    pub b_inv: IntegerMatrix,
    pub inverse: WeightedGraph,
    pub kind: InverseKind,
}

/// Run the whole pipeline: certify the unique matching, triangularize,
/// invert, decide balance, and extract the appropriate certificate.
pub fn analyze(g: &BipartiteGraph) -> Result<Analysis> {
    let matching = unique_perfect_matching(g)?;
    let det = det_adjacency(g, &matching);
    let tri = permute_to_triangular(g, &matching)?;
    let b_inv = invert_unit_lower_triangular(&tri.l)?;
    let inverse = inverse_graph_from_parts(g, &tri, &b_inv)?;
    let kind = match is_balanced(&inverse) {
        BalanceVerdict::Balanced(zeta) => {
            let k = tri.pair_order.len();
            // Matched edges carry weight +1, so ζ agrees on both vertices of
            // a pair; D is ζ restricted to pair positions.
            let d: Vec<i8> = (0..k).map(|p| zeta.get(tri.pair_order[p].0)).collect();
            let mut b_plus = IntegerMatrix::zero(k, k);
            for (i, j, v) in b_inv.nonzero_entries() {
                let s = d[i] * d[j];
                b_plus.set(i, j, if s == 1 { v.clone() } else { -v });
            }
            if !b_plus.is_nonnegative() {
                return Err(Error::PreconditionViolated("switching failed to positivize B^-1".into()));
            }
            InverseKind::Nonnegative { b_plus, d, zeta }
        }
        BalanceVerdict::Unbalanced { .. } => {
            let cycle = chordless_negative_cycle(&inverse)?;
            let s: BTreeSet<usize> = cycle.iter().copied().collect();
            let cert = flower_check(g, &matching, &s)?;
            if !cert.odd {
                return Err(Error::PreconditionViolated("negative chordless cycle did not yield an odd flower".into()));
            }
            InverseKind::OddFlower(cert)
        }
    };
    Ok(Analysis { matching, det, tri, b_inv, inverse, kind })
}

/// None iff the inverse graph is balanced; otherwise an odd-flower
/// certificate extracted from a chordless negative cycle.
pub fn find_odd_flower(g: &BipartiteGraph, m: &Matching) -> Result<Option<FlowerCertificate>> {
    let inverse = inverse_graph(g, m)?;
    match is_balanced(&inverse) {
        BalanceVerdict::Balanced(_) => Ok(None),
        BalanceVerdict::Unbalanced { .. } => {
            let cycle = chordless_negative_cycle(&inverse)?;
            let s: BTreeSet<usize> = cycle.iter().copied().collect();
            let cert = flower_check(g, m, &s)?;
            Ok(Some(cert))
        }
    }
}

/// The answer to the non-negative inverse question: (B^+, D) on success, the
/// odd-flower certificate otherwise.
pub fn nonnegative_inverse(
    g: &BipartiteGraph,
) -> Result<std::result::Result<(IntegerMatrix, Vec<i8>), FlowerCertificate>> {
    let analysis = analyze(g)?;
    Ok(match analysis.kind {
        InverseKind::Nonnegative { b_plus, d, .. } => Ok((b_plus, d)),
        InverseKind::OddFlower(cert) => Err(cert),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn p4() -> BipartiteGraph {
        parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap()
    }

    fn wg(n: usize, edges: &[(usize, usize, i64)]) -> WeightedGraph {
        WeightedGraph::new(n, edges.iter().map(|&(u, v, w)| (u, v, BigInt::from(w))).collect()).unwrap()
    }

    #[test]
    fn k2_inverse_is_itself() {
        let g = parse_graph("2 1\ne 0 1\n").unwrap();
        let m = unique_perfect_matching(&g).unwrap();
        let inv = inverse_graph(&g, &m).unwrap();
        assert_eq!(inv.edges(), &[(0, 1, BigInt::from(1))]);
    }

    #[test]
    fn p4_inverse_edges() {
        let g = p4();
        let m = unique_perfect_matching(&g).unwrap();
        let inv = inverse_graph(&g, &m).unwrap();
        let expect = wg(4, &[(0, 1, 1), (0, 3, -1), (2, 3, 1)]);
        assert_eq!(inv, expect);
    }

    #[test]
    fn switching_examples() {
        let inv = wg(4, &[(0, 1, 1), (0, 3, -1), (2, 3, 1)]);
        let idty = apply_switching(&inv, &SwitchingFunction::all_positive(4)).unwrap();
        assert_eq!(idty, inv);
        let zeta = SwitchingFunction::new(vec![1, 1, -1, -1]).unwrap();
        let sw = apply_switching(&inv, &zeta).unwrap();
        assert!(sw.edges().iter().all(|(_, _, w)| w.is_positive()));
        let back = apply_switching(&sw, &zeta).unwrap();
        assert_eq!(back, inv);

        let single = wg(2, &[(0, 1, -1)]);
        let flip = SwitchingFunction::new(vec![-1, 1]).unwrap();
        assert_eq!(apply_switching(&single, &flip).unwrap(), wg(2, &[(0, 1, 1)]));

        assert!(matches!(
            apply_switching(&single, &SwitchingFunction::new(vec![1]).unwrap()),
            Err(Error::MissingVertex(1))
        ));
    }

    #[test]
    fn balance_of_small_graphs() {
        match is_balanced(&wg(2, &[(0, 1, 5)])) {
            BalanceVerdict::Balanced(z) => assert_eq!(z.signs(), &[1, 1]),
            other => panic!("expected balanced, got {other:?}"),
        }
        match is_balanced(&wg(4, &[(0, 1, 1), (0, 3, -1), (2, 3, 1)])) {
            BalanceVerdict::Balanced(z) => assert_eq!(z.signs(), &[1, 1, -1, -1]),
            other => panic!("expected balanced, got {other:?}"),
        }
        let neg_square = wg(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, -1)]);
        match is_balanced(&neg_square) {
            BalanceVerdict::Unbalanced { cycle } => {
                assert_eq!(cycle.len(), 4);
                assert_eq!(neg_square.cycle_sign(&cycle), Some(-1));
            }
            other => panic!("expected unbalanced, got {other:?}"),
        }
    }

    #[test]
    fn chordless_extraction() {
        let neg_square = wg(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, -1)]);
        let c = chordless_negative_cycle(&neg_square).unwrap();
        assert_eq!(c.len(), 4);

        // Negative 4-cycle with a positive chord: splitting must keep the
        // negative triangle.
        let chorded = wg(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, -1), (0, 2, 1)]);
        let c = chordless_negative_cycle(&chorded).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(chorded.cycle_sign(&c), Some(-1));

        let balanced = wg(2, &[(0, 1, 3)]);
        assert!(matches!(chordless_negative_cycle(&balanced), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn p4_nonnegative_inverse() {
        let res = nonnegative_inverse(&p4()).unwrap().expect("P4 inverse is balanceable");
        let (b_plus, d) = res;
        assert_eq!(b_plus, IntegerMatrix::from_rows(&[&[1, 0], &[1, 1]]));
        assert_eq!(d, vec![1, -1]);
    }

    #[test]
    fn k2_nonnegative_inverse() {
        let g = parse_graph("2 1\ne 0 1\n").unwrap();
        let (b_plus, d) = nonnegative_inverse(&g).unwrap().expect("K2 is balanceable");
        assert_eq!(b_plus, IntegerMatrix::from_rows(&[&[1]]));
        assert_eq!(d, vec![1]);
    }

    #[test]
    fn p4_has_no_odd_flower() {
        let g = p4();
        let m = unique_perfect_matching(&g).unwrap();
        assert!(find_odd_flower(&g, &m).unwrap().is_none());
    }

    #[test]
    fn errors_propagate_through_pipeline() {
        let c4 = parse_graph("4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n").unwrap();
        assert!(matches!(nonnegative_inverse(&c4), Err(Error::NotUnique { .. })));
        let p3 = parse_graph("3 2\ne 0 1\ne 1 2\n").unwrap();
        assert!(matches!(nonnegative_inverse(&p3), Err(Error::NoPerfectMatching { .. })));
    }

    #[test]
    fn weighted_graph_from_matrix() {
        let m = IntegerMatrix::from_rows(&[&[0, 2, -1], &[2, 0, 0], &[-1, 0, 0]]);
        let w = WeightedGraph::from_adjacency_matrix(&m).unwrap();
        assert_eq!(w.edge_count(), 2);
        assert_eq!(w.adjacency_matrix(), m);
        let asym = IntegerMatrix::from_rows(&[&[0, 1], &[2, 0]]);
        assert!(WeightedGraph::from_adjacency_matrix(&asym).is_err());
    }
}
