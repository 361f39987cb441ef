//! Exact integer determinants and inverses of the triangularized bipartite
//! adjacency matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::matching::{build_dag, Matching};
use crate::matrix::IntegerMatrix;

/// Row/column permutation of the canonical bipartite adjacency matrix that
/// makes it unit lower triangular, together with the triangular matrix.
#[derive(Debug, Clone)]
pub struct TriangularForm {
    /// Matched pairs (r, c) by triangular position: row i and column i of L
    /// belong to `pair_order[i]`.
    pub pair_order: Vec<(usize, usize)>,
    /// `row_perm[i]` = index of `pair_order[i].r` within sorted R, so that
    /// `L[i][j] = B_canonical[row_perm[i]][col_perm[j]]`.
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub l: IntegerMatrix,
}

/// Permute the bipartite adjacency of a certified (G, M) to unit lower
/// triangular form. Pairs are ordered by a deterministic sinks-first
/// topological sort of the pair digraph, which always exists and always
/// triangularizes.
pub fn permute_to_triangular(g: &BipartiteGraph, m: &Matching) -> Result<TriangularForm> {
    let dag = build_dag(g, m)?;
    let k = dag.pair_count();
    let pair_order: Vec<(usize, usize)> = dag.triangular_order().iter().map(|&p| dag.pair(p)).collect();

    let index_in = |part: &[usize], v: usize| part.binary_search(&v).expect("pair vertex in its part");
    let row_perm: Vec<usize> = pair_order.iter().map(|&(r, _)| index_in(g.part_r(), r)).collect();
    let col_perm: Vec<usize> = pair_order.iter().map(|&(_, c)| index_in(g.part_c(), c)).collect();

    let mut l = IntegerMatrix::zero(k, k);
    for i in 0..k {
        let (r, _) = pair_order[i];
        for j in 0..k {
            let (_, c) = pair_order[j];
            if g.has_edge(r, c) {
                if j > i {
                    return Err(Error::NotTriangularizable(format!(
                        "edge {r}-{c} lands above the diagonal at ({i},{j})"
                    )));
                }
                l.set(i, j, BigInt::one());
            }
        }
    }
    debug_assert!(l.is_unit_lower_triangular_01());
    Ok(TriangularForm { pair_order, row_perm, col_perm, l })
}

/// Exact inverse of a unit lower triangular integer matrix by forward
/// substitution. Zero entries of L are skipped, so sparse instances invert
/// in time proportional to the fill of L.
pub fn invert_unit_lower_triangular(l: &IntegerMatrix) -> Result<IntegerMatrix> {
    if !l.is_unit_lower_triangular() {
        return Err(Error::NotUnitTriangular);
    }
    let n = l.rows();
    // Strictly-lower nonzeros per row.
    let rows: Vec<Vec<(usize, BigInt)>> = (0..n)
        .map(|i| {
            (0..i)
                .filter_map(|j| {
                    let e = l.get(i, j);
                    if e.is_zero() {
                        None
                    } else {
                        Some((j, e.clone()))
                    }
                })
                .collect()
        })
        .collect();

    let mut inv = IntegerMatrix::zero(n, n);
    let mut col = vec![BigInt::zero(); n];
    for q in 0..n {
        for x in col.iter_mut().take(q) {
            x.set_zero();
        }
        col[q] = BigInt::one();
        for i in (q + 1)..n {
            let mut acc = BigInt::zero();
            for (j, v) in &rows[i] {
                if *j >= q && !col[*j].is_zero() {
                    if v.is_one() {
                        acc += &col[*j];
                    } else {
                        acc += v * &col[*j];
                    }
                }
            }
            col[i] = -acc;
        }
        for i in q..n {
            if !col[i].is_zero() {
                inv.set(i, q, col[i].clone());
            }
        }
    }
    Ok(inv)
}

/// det(A) = (-1)^{|M|} for a bipartite graph with unique perfect matching M.
pub fn det_adjacency(_g: &BipartiteGraph, m: &Matching) -> i64 {
    if m.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The symmetric block matrix [[0, B], [B^T, 0]].
pub fn assemble_adjacency(b: &IntegerMatrix) -> IntegerMatrix {
    let (r, c) = (b.rows(), b.cols());
    let mut a = IntegerMatrix::zero(r + c, r + c);
    for (i, j, v) in b.nonzero_entries() {
        a.set(i, r + j, v.clone());
        a.set(r + j, i, v.clone());
    }
    a
}

/// The inverse of [[0, B], [B^T, 0]]: the symmetric block matrix with zero
/// diagonal blocks and off-diagonal blocks (B^-1)^T and B^-1.
pub fn assemble_inverse_adjacency(b_inv: &IntegerMatrix) -> IntegerMatrix {
    assert!(b_inv.is_square());
    let k = b_inv.rows();
    let mut a = IntegerMatrix::zero(2 * k, 2 * k);
    for (i, j, v) in b_inv.nonzero_entries() {
        // (B^-1)^T occupies the upper-right block.
        a.set(j, k + i, v.clone());
        a.set(k + i, j, v.clone());
    }
    a
}
