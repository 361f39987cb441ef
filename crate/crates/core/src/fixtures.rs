//! Canonical instances shared by tests, benches, and the CLI examples.

use crate::graph::BipartiteGraph;
use crate::matrix::IntegerMatrix;

/// The repository's canonical unbalanced instance: 8 vertices, matching
/// edges r_i - c_i with r_i = 2(i-1) and c_i = 2(i-1)+1, non-matching edges
/// {r2-c1, r3-c1, r3-c2, r4-c2, r4-c3}. Its triangular bipartite adjacency
/// matrix has rows 1000, 1100, 1110, 0111.
pub fn w8() -> BipartiteGraph {
    BipartiteGraph::from_unit_lower_triangular(&w8_triangular()).expect("fixture is triangular")
}

pub fn w8_triangular() -> IntegerMatrix {
    IntegerMatrix::from_rows(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1]])
}

/// Path on n vertices, 0-1-2-...-(n-1).
pub fn path_graph(n: usize) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    BipartiteGraph::new(n, &edges).expect("paths are bipartite")
}

/// Cycle on n vertices (n even for bipartiteness).
pub fn cycle_graph(n: usize) -> BipartiteGraph {
    assert!(n >= 4 && n % 2 == 0);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    BipartiteGraph::new(n, &edges).expect("even cycles are bipartite")
}
