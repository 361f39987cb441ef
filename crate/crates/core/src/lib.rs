//! Exact toolkit for inverses of bipartite graphs with unique perfect
//! matchings.
//!
//! Given a bipartite graph whose perfect matching is unique, the adjacency
//! matrix has an integral inverse. This crate certifies the matching,
//! triangularizes and inverts the bipartite adjacency matrix over exact
//! integers, decides whether the inverse is diagonally similar to a
//! non-negative matrix, and emits a constructive certificate either way: a
//! ±1 switching/diagonal matrix, or an odd-flower subgraph witnessing the
//! obstruction. It also carries the poset bridge (pair digraph → poset →
//! Zeta and Möbius matrices) and brute-force oracles for every fast
//! algorithm.
//!
//! No floating point anywhere: all arithmetic is arbitrary-precision.

#![forbid(unsafe_code)]

pub mod balance;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod matching;
pub mod matrix;
pub mod oracle;
pub mod poset;

pub use balance::{
    analyze, apply_switching, chordless_negative_cycle, find_odd_flower, inverse_graph,
    is_balanced, nonnegative_inverse, Analysis, BalanceVerdict, InverseKind, SwitchingFunction,
    WeightedGraph,
};
pub use error::{Error, NotFlowerReason, Result};
pub use graph::{bipartition, parse_graph, BipartiteGraph, Multigraph, Side};
pub use linalg::{
    assemble_adjacency, assemble_inverse_adjacency, det_adjacency, invert_unit_lower_triangular,
    permute_to_triangular, TriangularForm,
};
pub use matching::{
    build_dag, flower_check, m_span, tau_counts, unique_perfect_matching, FlowerCertificate,
    Matching, PairDag, PathProfile, Subgraph,
};
pub use matrix::IntegerMatrix;
pub use poset::{
    antichain, boolean_lattice, chain, mobius_balance, mobius_matrix, mobius_value, parse_poset,
    poset_from_dag, poset_to_graph, zeta_at, Poset,
};
