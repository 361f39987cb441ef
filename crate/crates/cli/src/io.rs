//! Input sniffing and loading shared by the subcommands.

use std::fs;
use std::path::Path;

use ginv_core::error::{Error, Result};
use ginv_core::graph::{parse_graph, BipartiteGraph};
use ginv_core::matrix::IntegerMatrix;
use ginv_core::poset::{parse_poset, Poset};

/// What a file looks like, judged by its first meaningful token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    EdgeList,
    GraphJson,
    MatrixMarket,
    Poset,
}

pub fn sniff(text: &str) -> InputKind {
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("%%MatrixMarket") {
            return InputKind::MatrixMarket;
        }
        if line.starts_with('{') {
            return InputKind::GraphJson;
        }
        let fields = line.split_whitespace().count();
        return if fields == 1 { InputKind::Poset } else { InputKind::EdgeList };
    }
    InputKind::EdgeList
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Syntax { line: 0, msg: format!("cannot read {}: {e}", path.display()) })
}

/// Load a bipartite graph from an edge list, graph JSON, or a unit lower
/// triangular Matrix Market file.
pub fn load_graph(path: &Path) -> Result<(BipartiteGraph, String)> {
    let text = read_file(path)?;
    let g = match sniff(&text) {
        InputKind::GraphJson => BipartiteGraph::from_json(&text)?,
        InputKind::MatrixMarket => {
            let b = IntegerMatrix::from_matrix_market(&text)?;
            BipartiteGraph::from_unit_lower_triangular(&b)?
        }
        InputKind::Poset => {
            return Err(Error::Syntax { line: 1, msg: "expected a graph file, found a poset".into() })
        }
        InputKind::EdgeList => parse_graph(&text)?,
    };
    Ok((g, text))
}

/// Load a poset from its own format or derive one from a graph file through
/// the pipeline. Returns the poset and the labels of its elements (original
/// ids for poset files, pair indices in elimination order for graphs).
pub fn load_poset(path: &Path) -> Result<(Poset, Vec<usize>)> {
    let text = read_file(path)?;
    match sniff(&text) {
        InputKind::Poset => parse_poset(&text),
        _ => {
            let (g, _) = load_graph(path)?;
            let m = ginv_core::matching::unique_perfect_matching(&g)?;
            let dag = ginv_core::matching::build_dag(&g, &m)?;
            let p = ginv_core::poset::poset_from_dag(&dag);
            let labels = dag.triangular_order().to_vec();
            Ok((p, labels))
        }
    }
}

pub fn load_matrix(path: &Path) -> Result<IntegerMatrix> {
    let text = read_file(path)?;
    IntegerMatrix::from_matrix_market(&text)
}
