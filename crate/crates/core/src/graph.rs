//! Graph data model: simple bipartite graphs with a certified bipartition,
//! multigraphs arising from contractions, and the text/JSON formats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Which side of the bipartition a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    R,
    C,
}

/// Simple undirected bipartite graph over vertices `0..n` with a certified
/// bipartition (R, C). Immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    /// Normalized (min, max), sorted, no duplicates.
    edges: Vec<(usize, usize)>,
    r: Vec<usize>,
    c: Vec<usize>,
    side: Vec<Side>,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Build from an edge list, computing the canonical bipartition by
    /// two-coloring (in each connected component the smallest vertex id is
    /// placed in R).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let (edges, adj) = normalize_edges(n, edges)?;
        let side = bipartition_sides(n, &adj)?;
        Ok(Self::assemble(n, edges, adj, side))
    }

    /// Build from an edge list plus an explicit bipartition, validating it.
    pub fn with_parts(n: usize, edges: &[(usize, usize)], r: &[usize], c: &[usize]) -> Result<Self> {
        let (edges, adj) = normalize_edges(n, edges)?;
        if r.len() + c.len() != n {
            return Err(Error::InvalidGraph("R and C must partition the vertex set".into()));
        }
        let mut side: Vec<Option<Side>> = vec![None; n];
        for &v in r {
            if v >= n || side[v].is_some() {
                return Err(Error::InvalidGraph(format!("bad bipartition vertex {v}")));
            }
            side[v] = Some(Side::R);
        }
        for &v in c {
            if v >= n || side[v].is_some() {
                return Err(Error::InvalidGraph(format!("bad bipartition vertex {v}")));
            }
            side[v] = Some(Side::C);
        }
        let side: Vec<Side> = side.into_iter().map(Option::unwrap).collect();
        for &(u, v) in &edges {
            if side[u] == side[v] {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} does not cross the bipartition")));
            }
        }
        Ok(Self::assemble(n, edges, adj, side))
    }

    fn assemble(n: usize, edges: Vec<(usize, usize)>, adj: Vec<Vec<usize>>, side: Vec<Side>) -> Self {
        let r = (0..n).filter(|&v| side[v] == Side::R).collect();
        let c = (0..n).filter(|&v| side[v] == Side::C).collect();
        BipartiteGraph { n, edges, r, c, side, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted vertex ids of the R part.
    pub fn part_r(&self) -> &[usize] {
        &self.r
    }

    /// Sorted vertex ids of the C part.
    pub fn part_c(&self) -> &[usize] {
        &self.c
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The |R| x |C| 0/1 matrix under explicit row and column orders, which
    /// must be permutations of R and C respectively.
    pub fn bipartite_adjacency(&self, row_order: &[usize], col_order: &[usize]) -> Result<IntegerMatrix> {
        if !is_permutation_of(row_order, &self.r) || !is_permutation_of(col_order, &self.c) {
            return Err(Error::OrderMismatch);
        }
        let mut m = IntegerMatrix::zero(row_order.len(), col_order.len());
        for (i, &u) in row_order.iter().enumerate() {
            for (j, &v) in col_order.iter().enumerate() {
                if self.has_edge(u, v) {
                    m.set(i, j, 1.into());
                }
            }
        }
        Ok(m)
    }

    /// Bipartite adjacency with both parts in sorted vertex order.
    pub fn canonical_bipartite_adjacency(&self) -> IntegerMatrix {
        self.bipartite_adjacency(&self.r, &self.c).expect("parts are their own permutations")
    }

    /// Rebuild a graph from a unit lower triangular 0/1 matrix: each index i
    /// becomes a matched pair (2i, 2i+1) and each nonzero (i, j) the edge
    /// 2i - 2j+1. The result has a unique perfect matching by construction.
    pub fn from_unit_lower_triangular(b: &IntegerMatrix) -> Result<Self> {
        if !b.is_unit_lower_triangular_01() {
            return Err(Error::NotUnitTriangular);
        }
        let k = b.rows();
        let mut edges = Vec::new();
        for (i, j, _) in b.nonzero_entries() {
            edges.push((2 * i, 2 * j + 1));
        }
        BipartiteGraph::new(2 * k, &edges)
    }

    /// Canonical edge-list document: `n m` header then sorted `e u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Canonical JSON form: `{"n":…,"edges":[[u,v],…],"R":[…],"C":[…]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
            r: self.r.clone(),
            c: self.c.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text)
            .map_err(|e| Error::Syntax { line: e.line(), msg: e.to_string() })?;
        BipartiteGraph::with_parts(g.n, &g.edges, &g.r, &g.c)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(rename = "R")]
    r: Vec<usize>,
    #[serde(rename = "C")]
    c: Vec<usize>,
}

fn normalize_edges(n: usize, edges: &[(usize, usize)]) -> Result<(Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    let mut norm = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range (n={n})")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        norm.push((u.min(v), u.max(v)));
    }
    norm.sort_unstable();
    if norm.windows(2).any(|w| w[0] == w[1]) {
        let d = norm.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        return Err(Error::InvalidGraph(format!("parallel edge {}-{}", d.0, d.1)));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &norm {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok((norm, adj))
}

/// Proper two-coloring; deterministic: BFS per component from the smallest
/// unvisited id, which is placed in R. Returns an odd-cycle witness on
/// failure.
pub fn bipartition(n: usize, edges: &[(usize, usize)]) -> Result<(Vec<usize>, Vec<usize>)> {
    let (_, adj) = normalize_edges(n, edges)?;
    let side = bipartition_sides(n, &adj)?;
    let r = (0..n).filter(|&v| side[v] == Side::R).collect();
    let c = (0..n).filter(|&v| side[v] == Side::C).collect();
    Ok((r, c))
}

fn bipartition_sides(n: usize, adj: &[Vec<usize>]) -> Result<Vec<Side>> {
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut depth: Vec<usize> = vec![0; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(true); // true = R
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return Err(Error::NotBipartite { cycle: fundamental_cycle(u, v, &parent, &depth) });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(|c| if c.unwrap() { Side::R } else { Side::C }).collect())
}

/// Cycle through tree edges from u and v up to their lowest common ancestor,
/// closed by the edge u-v.
fn fundamental_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
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
    // up_a ends at the LCA; append the b-side path reversed, excluding the LCA.
    up_b.pop();
    up_a.extend(up_b.into_iter().rev());
    up_a
}

/// Parse the edge-list format: header `n m`, then `m` lines `e u v`;
/// `#` starts a comment. The bipartition is certified by two-coloring.
pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 2 {
                return Err(Error::Syntax { line: idx + 1, msg: "expected header 'n m'".into() });
            }
            let n = parse_field(fields[0], idx)?;
            let m = parse_field(fields[1], idx)?;
            header = Some((n, m));
            continue;
        }
        if fields.len() != 3 || fields[0] != "e" {
            return Err(Error::Syntax { line: idx + 1, msg: "expected edge line 'e u v'".into() });
        }
        let u = parse_field(fields[1], idx)?;
        let v = parse_field(fields[2], idx)?;
        edges.push((u, v));
    }
    let (n, m) = header.ok_or(Error::Syntax { line: 1, msg: "missing header".into() })?;
    if edges.len() != m {
        return Err(Error::Syntax {
            line: text.lines().count(),
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    BipartiteGraph::new(n, &edges)
}

fn parse_field(s: &str, idx: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Syntax { line: idx + 1, msg: format!("expected integer, got '{s}'") })
}

/// Undirected multigraph; only produced by contraction operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    /// Multiplicity per normalized non-loop pair.
    edges: BTreeMap<(usize, usize), usize>,
    /// Multiplicity per loop vertex.
    loops: BTreeMap<usize, usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: BTreeMap::new(), loops: BTreeMap::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        if u == v {
            *self.loops.entry(u).or_insert(0) += 1;
        } else {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_multiplicities(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edges
    }

    pub fn loop_multiplicities(&self) -> &BTreeMap<usize, usize> {
        &self.loops
    }

    pub fn total_edges(&self) -> usize {
        self.edges.values().sum::<usize>() + self.loops.values().sum::<usize>()
    }

    /// Two-colorability. Loops and parallel edges both matter: a loop is an
    /// odd closed walk, while parallel edges are fine.
    pub fn is_bipartite(&self) -> bool {
        if !self.loops.is_empty() {
            return false;
        }
        let simple: Vec<(usize, usize)> = self.edges.keys().copied().collect();
        bipartition(self.n, &simple).is_ok()
    }
}

fn is_permutation_of(order: &[usize], part: &[usize]) -> bool {
    if order.len() != part.len() {
        return false;
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted == part
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_edge() {
        let g = parse_graph("2 1\ne 0 1\n").unwrap();
        assert_eq!(g.part_r(), &[0]);
        assert_eq!(g.part_c(), &[1]);
    }

    #[test]
    fn parse_p4() {
        let g = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.part_r(), &[0, 2]);
        assert_eq!(g.part_c(), &[1, 3]);
    }

    #[test]
    fn parse_triangle_reports_odd_cycle() {
        let err = parse_graph("3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap_err();
        match err {
            Error::NotBipartite { cycle } => {
                assert_eq!(cycle.len(), 3);
                let mut c = cycle.clone();
                c.sort_unstable();
                assert_eq!(c, vec![0, 1, 2]);
            }
            other => panic!("expected NotBipartite, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(parse_graph("2 1\nedge 0 1\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_graph("2 2\ne 0 1\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_graph("2 1\ne 0 0\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_graph("2 2\ne 0 1\ne 1 0\n"), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn comments_and_blank_lines_ok() {
        let g = parse_graph("# a path\n\n4 3   # header\ne 0 1\ne 1 2 # middle\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn bipartition_c5_fails() {
        let e = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        assert!(matches!(bipartition(5, &e), Err(Error::NotBipartite { .. })));
    }

    #[test]
    fn bipartition_per_component_rule() {
        let (r, c) = bipartition(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(r, vec![0, 2]);
        assert_eq!(c, vec![1, 3]);
    }

    #[test]
    fn isolated_vertices_go_to_r() {
        let (r, c) = bipartition(3, &[(1, 2)]).unwrap();
        assert_eq!(r, vec![0, 1]);
        assert_eq!(c, vec![2]);
    }

    #[test]
    fn bipartite_adjacency_orders() {
        let g = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        let b = g.bipartite_adjacency(&[0, 2], &[1, 3]).unwrap();
        assert_eq!(b, IntegerMatrix::from_rows(&[&[1, 0], &[1, 1]]));
        let b2 = g.bipartite_adjacency(&[2, 0], &[1, 3]).unwrap();
        assert_eq!(b2, IntegerMatrix::from_rows(&[&[1, 1], &[1, 0]]));
        assert!(matches!(g.bipartite_adjacency(&[0, 1], &[1, 3]), Err(Error::OrderMismatch)));
    }

    #[test]
    fn bipartite_adjacency_handles_unequal_parts() {
        let g = parse_graph("3 2\ne 0 1\ne 1 2\n").unwrap();
        let b = g.bipartite_adjacency(&[0, 2], &[1]).unwrap();
        assert_eq!(b, IntegerMatrix::from_rows(&[&[1], &[1]]));
    }

    #[test]
    fn json_round_trip_is_identity() {
        let g = parse_graph("4 3\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
        let j = g.to_json();
        let g2 = BipartiteGraph::from_json(&j).unwrap();
        assert_eq!(g, g2);
        assert_eq!(j, g2.to_json());
    }

    #[test]
    fn edge_list_round_trip_is_identity() {
        let g = parse_graph("5 3\n e 3 4\ne 0 1\ne 1 2\n").unwrap();
        let text = g.to_edge_list();
        let g2 = parse_graph(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(text, g2.to_edge_list());
    }

    #[test]
    fn from_triangular_rebuilds_p4() {
        let l = IntegerMatrix::from_rows(&[&[1, 0], &[1, 1]]);
        let g = BipartiteGraph::from_unit_lower_triangular(&l).unwrap();
        let mut edges = g.edges().to_vec();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn multigraph_bipartiteness() {
        let mut m = Multigraph::new(3);
        m.add_edge(0, 1);
        m.add_edge(0, 1);
        m.add_edge(1, 2);
        assert!(m.is_bipartite());
        m.add_edge(0, 2);
        assert!(!m.is_bipartite());
        let mut l = Multigraph::new(1);
        l.add_edge(0, 0);
        assert!(!l.is_bipartite());
    }
}
