//! The correspondence between pair digraphs, posets, Zeta/Möbius matrices,
//! and bipartite graphs with unique perfect matchings.
//!
//! Conventions: elements are kept in a linear extension with minimal
//! elements first (the same sinks-first order as the triangular form), and
//! the Zeta matrix is written `Z[i][j] = 1` iff `a_j <= a_i` so that Z(0) equals
//! the triangularized bipartite adjacency matrix and Z is lower triangular.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::balance::nonnegative_inverse;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::linalg::invert_unit_lower_triangular;
use crate::matching::{FlowerCertificate, PairDag};
use crate::matrix::IntegerMatrix;

/// Finite poset over elements 0..k in a fixed linear-extension order
/// (minimal first). `leq` is the full comparability relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    k: usize,
    /// leq[i * k + j] = true iff element i <= element j.
    leq: Vec<bool>,
}

impl Poset {
    /// Validate reflexivity, antisymmetry, transitivity, and that the element
    /// order is a linear extension (i <= j implies index i <= index j).
    pub fn new(k: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != k * k {
            return Err(Error::InvalidPoset("relation matrix has wrong size".into()));
        }
        let p = Poset { k, leq };
        for i in 0..k {
            if !p.leq(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
            for j in 0..k {
                if i != j && p.leq(i, j) {
                    if p.leq(j, i) {
                        return Err(Error::InvalidPoset(format!("not antisymmetric at ({i},{j})")));
                    }
                    if i > j {
                        return Err(Error::InvalidPoset(format!(
                            "element order is not a linear extension: {i} <= {j} but {i} comes later"
                        )));
                    }
                }
                for l in 0..k {
                    if p.leq(i, j) && p.leq(j, l) && !p.leq(i, l) {
                        return Err(Error::InvalidPoset(format!("not transitive at ({i},{j},{l})")));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Build from an arbitrary relation by reordering elements into a
    /// deterministic linear extension (minimal first, smallest original id
    /// breaking ties). Returns the poset and the original label per element.
    pub fn from_relation(k: usize, leq_pairs: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for &(i, j) in leq_pairs {
            if i >= k || j >= k {
                return Err(Error::InvalidPoset(format!("relation ({i},{j}) out of range")));
            }
            leq[i * k + j] = true;
        }
        // Transitive closure.
        for mid in 0..k {
            for i in 0..k {
                if leq[i * k + mid] {
                    for j in 0..k {
                        if leq[mid * k + j] {
                            leq[i * k + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && leq[i * k + j] && leq[j * k + i] {
                    return Err(Error::NotAcyclic);
                }
            }
        }
        // Kahn by number of unplaced elements below; smallest id first.
        let mut below: Vec<usize> = (0..k)
            .map(|j| (0..k).filter(|&i| i != j && leq[i * k + j]).count())
            .collect();
        let mut placed = vec![false; k];
        let mut labels = Vec::with_capacity(k);
        for _ in 0..k {
            let next = (0..k)
                .find(|&j| !placed[j] && below[j] == 0)
                .expect("acyclic relation always has a minimal element");
            placed[next] = true;
            labels.push(next);
            for j in 0..k {
                if !placed[j] && leq[next * k + j] {
                    below[j] -= 1;
                }
            }
        }
        let mut reordered = vec![false; k * k];
        for (new_i, &old_i) in labels.iter().enumerate() {
            for (new_j, &old_j) in labels.iter().enumerate() {
                reordered[new_i * k + new_j] = leq[old_i * k + old_j];
            }
        }
        Ok((Poset::new(k, reordered)?, labels))
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.k + j]
    }

    /// Lower-triangular Zeta matrix: `Z[i][j] = 1` iff `a_j <= a_i`.
    pub fn zeta_matrix(&self) -> IntegerMatrix {
        let mut z = IntegerMatrix::zero(self.k, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                if self.leq(j, i) {
                    z.set(i, j, BigInt::one());
                }
            }
        }
        z
    }
}

/// Poset of a pair digraph: a_i <= a_j iff a directed path runs from a_j to
/// a_i. Elements inherit the digraph's canonical triangular order.
pub fn poset_from_dag(dag: &PairDag) -> Poset {
    let k = dag.pair_count();
    let mut leq = vec![false; k * k];
    // below[pos] = positions of pairs reachable from the pair at `pos`.
    for start in 0..k {
        let pair = dag.triangular_order()[start];
        let mut stack = vec![pair];
        let mut seen = vec![false; k];
        seen[pair] = true;
        while let Some(u) = stack.pop() {
            for &v in dag.successors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        for (p, &s) in seen.iter().enumerate() {
            if s {
                // path pair -> p means p <= pair.
                leq[dag.position(p) * k + start] = true;
            }
        }
    }
    Poset::new(k, leq).expect("closure of an acyclic digraph is a poset")
}

/// The modified Zeta matrix evaluated at an integer x: diagonal 1, entry 1
/// for arcs of the digraph, entry x for implied comparabilities. zeta_at(0)
/// is the triangular bipartite adjacency matrix, zeta_at(1) the Zeta matrix
/// of the poset (adjacency-plus-identity of the transitive closure).
pub fn zeta_at(dag: &PairDag, x: i64) -> IntegerMatrix {
    let k = dag.pair_count();
    let poset = poset_from_dag(dag);
    let mut z = IntegerMatrix::zero(k, k);
    for i in 0..k {
        z.set(i, i, BigInt::one());
    }
    for &(a, b) in dag.arcs() {
        // Arc a -> b means b <= a; entry at (position(a), position(b)).
        z.set(dag.position(a), dag.position(b), BigInt::one());
    }
    for i in 0..k {
        for j in 0..k {
            if i != j && poset.leq(j, i) && z.get(i, j).is_zero() {
                z.set(i, j, BigInt::from(x));
            }
        }
    }
    z
}

/// Möbius matrix: the exact inverse of the Zeta matrix. Satisfies the Möbius
/// recurrence sum_{i <= k <= j} mu(k, j) = [i == j].
pub fn mobius_matrix(p: &Poset) -> IntegerMatrix {
    invert_unit_lower_triangular(&p.zeta_matrix()).expect("zeta matrix is unit lower triangular")
}

/// mu(a_i, a_j) read off the Möbius matrix under this crate's conventions.
pub fn mobius_value(mob: &IntegerMatrix, i: usize, j: usize) -> BigInt {
    mob.get(j, i).clone()
}

/// The bipartite graph whose triangularized bipartite adjacency matrix is
/// the Zeta matrix of P; it has a unique perfect matching by triangularity.
pub fn poset_to_graph(p: &Poset) -> BipartiteGraph {
    BipartiteGraph::from_unit_lower_triangular(&p.zeta_matrix())
        .expect("zeta matrix is unit lower triangular 0/1")
}

/// Is the Möbius matrix of P diagonally similar to a non-negative matrix?
/// Decided through the full pipeline on the graph of the Zeta matrix; the
/// Ok branch carries (M^+, D), the Err branch an odd-flower certificate.
pub fn mobius_balance(
    p: &Poset,
) -> std::result::Result<(IntegerMatrix, Vec<i8>), FlowerCertificate> {
    nonnegative_inverse(&poset_to_graph(p)).expect("zeta graphs always certify")
}

/// Boolean lattice of subsets of {0..k}, ordered by inclusion; elements in
/// (rank, numeric) order with their bitmask labels.
pub fn boolean_lattice(k: u32) -> (Poset, Vec<u64>) {
    assert!(k <= 16, "boolean lattice grows as 2^k");
    let size = 1usize << k;
    let mut masks: Vec<u64> = (0..size as u64).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let n = size;
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if masks[i] & !masks[j] == 0 {
                leq[i * n + j] = true;
            }
        }
    }
    (Poset::new(n, leq).expect("inclusion order is a poset"), masks)
}

/// Chain a_0 <= a_1 <= ... of length k.
pub fn chain(k: usize) -> Poset {
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in i..k {
            leq[i * k + j] = true;
        }
    }
    Poset::new(k, leq).expect("chain is a poset")
}

/// Antichain on k elements.
pub fn antichain(k: usize) -> Poset {
    let mut leq = vec![false; k * k];
    for i in 0..k {
        leq[i * k + i] = true;
    }
    Poset::new(k, leq).expect("antichain is a poset")
}

/// Parse the poset file format: a `k` header, then `le i j` cover lines;
/// `#` starts a comment. The transitive closure is computed on load and the
/// elements are reordered into the canonical linear extension; the returned
/// labels map element positions back to the ids used in the file.
pub fn parse_poset(text: &str) -> Result<(Poset, Vec<usize>)> {
    let mut k: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if k.is_none() {
            if fields.len() != 1 {
                return Err(Error::Syntax { line: idx + 1, msg: "expected element count".into() });
            }
            k = Some(fields[0].parse().map_err(|_| Error::Syntax { line: idx + 1, msg: "bad element count".into() })?);
            continue;
        }
        if fields.len() != 3 || fields[0] != "le" {
            return Err(Error::Syntax { line: idx + 1, msg: "expected 'le i j'".into() });
        }
        let i: usize = fields[1].parse().map_err(|_| Error::Syntax { line: idx + 1, msg: "bad index".into() })?;
        let j: usize = fields[2].parse().map_err(|_| Error::Syntax { line: idx + 1, msg: "bad index".into() })?;
        pairs.push((i, j));
    }
    let k = k.ok_or(Error::Syntax { line: 1, msg: "missing element count".into() })?;
    Poset::from_relation(k, &pairs)
}
