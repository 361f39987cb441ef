use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ginv_cli::exit_codes;
use ginv_cli::io::{load_graph, load_matrix, load_poset, read_file, sniff, InputKind};
use ginv_cli::report::{fnv1a64, AnalysisReport, InputInfo};
use ginv_cli::selfcheck;

use ginv_core::balance::{analyze, find_odd_flower, is_balanced, BalanceVerdict, InverseKind};
use ginv_core::error::Error;
use ginv_core::matching::unique_perfect_matching;
use ginv_core::matrix::IntegerMatrix;
use ginv_core::oracle::{kronecker_product, random_matched_tree, random_unique_pm_graph};
use ginv_core::poset::{boolean_lattice, mobius_matrix, mobius_value, Poset};
use ginv_core::WeightedGraph;

/// Exact inverses of bipartite graphs with unique perfect matchings:
/// non-negative diagonal similarity or an odd-flower certificate, plus the
/// poset Zeta/Mobius bridge and brute-force selfchecks.
#[derive(Parser)]
#[command(name = "ginv", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a graph file and report the verdict.
    ///
    /// Exit code 0: the inverse is diagonally similar to a non-negative
    /// matrix; 10: an odd flower obstructs it; 2: precondition failure.
    Analyze {
        path: PathBuf,
        /// Emit the canonical JSON report on stdout.
        #[arg(long)]
        json: bool,
        /// Write the JSON report to a file as well.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for B.mtx, B_inv.mtx, B_plus.mtx.
        #[arg(long, value_name = "DIR")]
        mtx_out: Option<PathBuf>,
    },
    /// Triangularize and invert the bipartite adjacency matrix.
    ///
    /// Accepts a graph file or a unit lower triangular Matrix Market file;
    /// prints B^-1 in Matrix Market form on stdout.
    Invert {
        path: PathBuf,
        /// Directory for B.mtx and B_inv.mtx.
        #[arg(long, value_name = "DIR")]
        mtx_out: Option<PathBuf>,
    },
    /// Balance: of the inverse graph for graph input, or of a weighted
    /// adjacency matrix for .mtx input. Exit 0 balanced, 10 unbalanced.
    Balance {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for an odd flower. Exit 0 if none, 10 if one exists.
    Flower {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Zeta and Mobius matrices of a poset (or of a graph's closure poset),
    /// and balance of the Mobius matrix.
    Poset {
        /// Poset file (`k` then `le i j` cover lines) or a graph file.
        path: Option<PathBuf>,
        /// Use the Boolean lattice on this many atoms instead of a file.
        #[arg(long, value_name = "K", conflicts_with = "path")]
        boolean: Option<u32>,
        /// Also emit the Mobius matrix and its balance verdict.
        #[arg(long)]
        mobius: bool,
        #[arg(long)]
        json: bool,
        /// Directory for zeta.mtx / mobius.mtx.
        #[arg(long, value_name = "DIR")]
        mtx_out: Option<PathBuf>,
    },
    /// Generate a seeded random unique-perfect-matching instance.
    Gen {
        #[arg(long)]
        pairs: usize,
        /// Density of strictly-lower entries (ignored with --tree).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Grow a random matched tree instead.
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        seed: u64,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a corpus manifest record for exact regeneration.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Kronecker product of two unit lower triangular matrices.
    Kron {
        a: PathBuf,
        b: PathBuf,
        /// Emit the assembled graph as an edge list instead of the matrix.
        #[arg(long)]
        graph: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-validate the fast algorithms against brute-force oracles on
    /// seeded random instances. Nonzero exit on any discrepancy, with the
    /// offending instance serialized for replay.
    Selfcheck {
        /// Maximum pairs per instance (cycled 1..=pairs).
        #[arg(long, default_value_t = 6)]
        pairs: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Where to write the replay files on failure.
        #[arg(long, value_name = "DIR")]
        replay_dir: Option<PathBuf>,
        /// Corrupt one computed value to demonstrate discrepancy reporting.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Command::Analyze { path, json, out, mtx_out } => cmd_analyze(&path, json, out.as_deref(), mtx_out.as_deref()),
        Command::Invert { path, mtx_out } => cmd_invert(&path, mtx_out.as_deref()),
        Command::Balance { path, json } => cmd_balance(&path, json),
        Command::Flower { path, json } => cmd_flower(&path, json),
        Command::Poset { path, boolean, mobius, json, mtx_out } => {
            cmd_poset(path.as_deref(), boolean, mobius, json, mtx_out.as_deref())
        }
        Command::Gen { pairs, p, tree, seed, out, manifest } => {
            cmd_gen(pairs, p, tree, seed, out.as_deref(), manifest.as_deref())
        }
        Command::Kron { a, b, graph, out } => cmd_kron(&a, &b, graph, out.as_deref()),
        Command::Selfcheck { pairs, count, seed, json, replay_dir, inject_fault } => {
            cmd_selfcheck(pairs, count, seed, json, replay_dir.as_deref(), inject_fault)
        }
    };
    ExitCode::from(code as u8)
}

fn classify(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. }
        | Error::NotBipartite { .. }
        | Error::NoPerfectMatching { .. }
        | Error::NotUnique { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidMatrix(_)
        | Error::InvalidPoset(_)
        | Error::NotAcyclic
        | Error::NotUnitTriangular => exit_codes::PRECONDITION,
        _ => exit_codes::INTERNAL,
    }
}

fn input_info(path: &Path, text: &str, n: Option<usize>, m: Option<usize>) -> InputInfo {
    InputInfo { path: path.display().to_string(), digest: fnv1a64(text.as_bytes()), n, m }
}

fn write_mtx(dir: &Path, name: &str, m: &IntegerMatrix) -> Result<String, String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, m.to_matrix_market()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path.display().to_string())
}

fn cmd_analyze(path: &Path, json: bool, out: Option<&Path>, mtx_out: Option<&Path>) -> i32 {
    let started = Instant::now();
    let text = match read_file(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("ginv analyze: {e}");
            return exit_codes::PRECONDITION;
        }
    };
    let (graph, analysis) = match load_graph(path).and_then(|(g, _)| analyze(&g).map(|a| (g, a))) {
        Ok(pair) => pair,
        Err(e) => {
            let report = AnalysisReport::error_report(input_info(path, &text, None, None), &e);
            if json {
                println!("{}", report.to_json());
            }
            eprintln!("ginv analyze: {e}");
            return classify(&e);
        }
    };

    let info = input_info(path, &text, Some(graph.n()), Some(graph.edge_count()));
    let mut report = AnalysisReport::from_analysis(info, &analysis);
    if let Some(dir) = mtx_out {
        let refs: Result<(), String> = (|| {
            report.b = Some(write_mtx(dir, "B.mtx", &analysis.tri.l)?);
            report.b_inv = Some(write_mtx(dir, "B_inv.mtx", &analysis.b_inv)?);
            if let InverseKind::Nonnegative { b_plus, .. } = &analysis.kind {
                report.b_plus = Some(write_mtx(dir, "B_plus.mtx", b_plus)?);
            }
            Ok(())
        })();
        if let Err(e) = refs {
            eprintln!("ginv analyze: {e}");
            return exit_codes::INTERNAL;
        }
    }

    // Certificates must re-validate before they are emitted.
    if let Err(e) = report.validate(&graph) {
        eprintln!("ginv analyze: internal certificate validation failed: {e}");
        return exit_codes::INTERNAL;
    }

    let rendered = report.to_json();
    if let Some(out_path) = out {
        if let Err(e) = fs::write(out_path, &rendered) {
            eprintln!("ginv analyze: cannot write {}: {e}", out_path.display());
            return exit_codes::INTERNAL;
        }
    }
    if json {
        println!("{rendered}");
    } else {
        println!("input: {} ({} vertices, {} edges)", path.display(), graph.n(), graph.edge_count());
        println!("det(A) = {}", analysis.det);
        match &analysis.kind {
            InverseKind::Nonnegative { d, .. } => {
                let ds: Vec<String> = d.iter().map(|s| format!("{s:+}")).collect();
                println!("verdict: nonnegative  D = [{}]", ds.join(", "));
            }
            InverseKind::OddFlower(cert) => {
                println!(
                    "verdict: odd_flower  order = {:?}  negative pairs = {}",
                    cert.order, cert.negative_pairs
                );
            }
        }
    }
    eprintln!("analyze took {} ms", started.elapsed().as_millis());
    match analysis.kind {
        InverseKind::Nonnegative { .. } => exit_codes::OK,
        InverseKind::OddFlower(_) => exit_codes::ODD_FLOWER,
    }
}

fn cmd_invert(path: &Path, mtx_out: Option<&Path>) -> i32 {
    let result = (|| -> Result<(IntegerMatrix, IntegerMatrix), Error> {
        let text = read_file(path)?;
        let l = if sniff(&text) == InputKind::MatrixMarket {
            IntegerMatrix::from_matrix_market(&text)?
        } else {
            let (g, _) = load_graph(path)?;
            let m = unique_perfect_matching(&g)?;
            ginv_core::linalg::permute_to_triangular(&g, &m)?.l
        };
        let inv = ginv_core::linalg::invert_unit_lower_triangular(&l)?;
        Ok((l, inv))
    })();
    match result {
        Ok((l, inv)) => {
            if let Some(dir) = mtx_out {
                for (name, m) in [("B.mtx", &l), ("B_inv.mtx", &inv)] {
                    if let Err(e) = write_mtx(dir, name, m) {
                        eprintln!("ginv invert: {e}");
                        return exit_codes::INTERNAL;
                    }
                }
            }
            print!("{}", inv.to_matrix_market());
            exit_codes::OK
        }
        Err(e) => {
            eprintln!("ginv invert: {e}");
            classify(&e)
        }
    }
}

fn cmd_balance(path: &Path, json: bool) -> i32 {
    let verdict = (|| -> Result<(WeightedGraph, BalanceVerdict), Error> {
        let text = read_file(path)?;
        let w = if sniff(&text) == InputKind::MatrixMarket {
            WeightedGraph::from_adjacency_matrix(&IntegerMatrix::from_matrix_market(&text)?)?
        } else {
            let (g, _) = load_graph(path)?;
            let m = unique_perfect_matching(&g)?;
            ginv_core::balance::inverse_graph(&g, &m)?
        };
        let v = is_balanced(&w);
        Ok((w, v))
    })();
    match verdict {
        Ok((_, BalanceVerdict::Balanced(zeta))) => {
            if json {
                println!("{}", serde_json::json!({ "status": "balanced", "zeta": zeta.signs() }));
            } else {
                println!("balanced: zeta = {:?}", zeta.signs());
            }
            exit_codes::OK
        }
        Ok((w, BalanceVerdict::Unbalanced { cycle })) => {
            let chordless = ginv_core::balance::chordless_negative_cycle(&w)
                .expect("unbalanced graph has a chordless negative cycle");
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "status": "unbalanced",
                        "negative_cycle": cycle,
                        "chordless_negative_cycle": chordless,
                    })
                );
            } else {
                println!("unbalanced: negative cycle {cycle:?}, chordless {chordless:?}");
            }
            exit_codes::ODD_FLOWER
        }
        Err(e) => {
            eprintln!("ginv balance: {e}");
            classify(&e)
        }
    }
}

fn cmd_flower(path: &Path, json: bool) -> i32 {
    let result = (|| -> Result<_, Error> {
        let (g, _) = load_graph(path)?;
        let m = unique_perfect_matching(&g)?;
        find_odd_flower(&g, &m)
    })();
    match result {
        Ok(None) => {
            if json {
                println!("{}", serde_json::json!({ "flower": null }));
            } else {
                println!("no odd flower: the inverse is balanceable");
            }
            exit_codes::OK
        }
        Ok(Some(cert)) => {
            if json {
                println!("{}", serde_json::json!({ "flower": serde_json::to_value(&cert).unwrap() }));
            } else {
                println!("odd flower on {:?} with {} negative pairs", cert.order, cert.negative_pairs);
            }
            exit_codes::ODD_FLOWER
        }
        Err(e) => {
            eprintln!("ginv flower: {e}");
            classify(&e)
        }
    }
}

fn cmd_poset(path: Option<&Path>, boolean: Option<u32>, mobius: bool, json: bool, mtx_out: Option<&Path>) -> i32 {
    let loaded: Result<(Poset, Vec<String>), Error> = match (path, boolean) {
        (_, Some(k)) => {
            let (p, masks) = boolean_lattice(k);
            let labels = masks.iter().map(|m| format!("{m:b}")).collect();
            Ok((p, labels))
        }
        (Some(path), None) => load_poset(path).map(|(p, labels)| {
            let labels = labels.iter().map(ToString::to_string).collect();
            (p, labels)
        }),
        (None, None) => {
            eprintln!("ginv poset: need a file or --boolean K");
            return exit_codes::PRECONDITION;
        }
    };
    let (poset, labels) = match loaded {
        Ok(x) => x,
        Err(e) => {
            eprintln!("ginv poset: {e}");
            return classify(&e);
        }
    };

    let zeta = poset.zeta_matrix();
    let mut zeta_ref = None;
    let mut mobius_ref = None;
    let mut mobius_outcome = None;
    let mut mu_bottom_top = None;
    if let Some(dir) = mtx_out {
        match write_mtx(dir, "zeta.mtx", &zeta) {
            Ok(p) => zeta_ref = Some(p),
            Err(e) => {
                eprintln!("ginv poset: {e}");
                return exit_codes::INTERNAL;
            }
        }
    }
    if mobius {
        let mob = mobius_matrix(&poset);
        if !poset.is_empty() {
            mu_bottom_top = Some(mobius_value(&mob, 0, poset.len() - 1).to_string());
        }
        if let Some(dir) = mtx_out {
            match write_mtx(dir, "mobius.mtx", &mob) {
                Ok(p) => mobius_ref = Some(p),
                Err(e) => {
                    eprintln!("ginv poset: {e}");
                    return exit_codes::INTERNAL;
                }
            }
        }
        // Balance of the Mobius matrix, through the graph of the Zeta matrix.
        mobius_outcome = Some(match ginv_core::poset::mobius_balance(&poset) {
            Ok(_) => "nonnegative".to_string(),
            Err(_) => "odd_flower".to_string(),
        });
    }

    if json {
        println!(
            "{}",
            serde_json::json!({
                "elements": poset.len(),
                "labels": labels,
                "zeta": zeta_ref,
                "mobius": mobius_ref,
                "mobius_balance": mobius_outcome,
                "mu_bottom_top": mu_bottom_top,
            })
        );
    } else {
        println!("poset with {} elements", poset.len());
        if mtx_out.is_none() {
            print!("{}", zeta.to_matrix_market());
        }
        if let Some(v) = &mu_bottom_top {
            println!("mu(bottom, top) = {v}");
        }
        if let Some(o) = &mobius_outcome {
            println!("mobius balance: {o}");
        }
    }
    exit_codes::OK
}

fn cmd_gen(pairs: usize, p: f64, tree: bool, seed: u64, out: Option<&Path>, manifest: Option<&Path>) -> i32 {
    if pairs == 0 {
        eprintln!("ginv gen: --pairs must be at least 1");
        return exit_codes::PRECONDITION;
    }
    if !(0.0..=1.0).contains(&p) {
        eprintln!("ginv gen: --p must lie in [0, 1]");
        return exit_codes::PRECONDITION;
    }
    let g = if tree { random_matched_tree(pairs, seed) } else { random_unique_pm_graph(pairs, p, seed) };
    // Generated instances must pass their own certification.
    if let Err(e) = unique_perfect_matching(&g) {
        eprintln!("ginv gen: generated instance failed certification: {e}");
        return exit_codes::INTERNAL;
    }
    let text = g.to_edge_list();
    if let Some(manifest_path) = manifest {
        let spec = if tree {
            selfcheck::InstanceSpec::matched_tree(pairs, seed)
        } else {
            selfcheck::InstanceSpec::unique_pm(pairs, p, seed)
        };
        // Corpus manifests are lists of records, even for one instance.
        let body = serde_json::to_string_pretty(&vec![spec]).unwrap();
        if let Err(e) = fs::write(manifest_path, body) {
            eprintln!("ginv gen: cannot write manifest: {e}");
            return exit_codes::INTERNAL;
        }
    }
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("ginv gen: cannot write {}: {e}", path.display());
                return exit_codes::INTERNAL;
            }
        }
        None => print!("{text}"),
    }
    exit_codes::OK
}

fn cmd_kron(a: &Path, b: &Path, graph: bool, out: Option<&Path>) -> i32 {
    let result = (|| -> Result<_, Error> {
        let ma = load_matrix(a)?;
        let mb = load_matrix(b)?;
        kronecker_product(&ma, &mb)
    })();
    match result {
        Ok((prod, g)) => {
            let text = if graph { g.to_edge_list() } else { prod.to_matrix_market() };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("ginv kron: cannot write {}: {e}", path.display());
                        return exit_codes::INTERNAL;
                    }
                }
                None => print!("{text}"),
            }
            exit_codes::OK
        }
        Err(e) => {
            eprintln!("ginv kron: {e}");
            classify(&e)
        }
    }
}

fn cmd_selfcheck(
    pairs: usize,
    count: u64,
    seed: u64,
    json: bool,
    replay_dir: Option<&Path>,
    inject_fault: bool,
) -> i32 {
    if pairs == 0 {
        eprintln!("ginv selfcheck: --pairs must be at least 1");
        return exit_codes::PRECONDITION;
    }
    let outcome = selfcheck::run(pairs, count, seed, inject_fault);
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome).unwrap());
    }
    match &outcome.failure {
        None => {
            if !json {
                println!("{}/{} consistent", outcome.consistent, outcome.checked);
            }
            exit_codes::OK
        }
        Some(failure) => {
            let dir = replay_dir.unwrap_or(Path::new("."));
            let graph_path = dir.join("replay_instance.graph");
            let manifest_path = dir.join("replay_manifest.json");
            let manifest_body = serde_json::to_string_pretty(&vec![failure.instance.clone()]).unwrap();
            let wrote = fs::create_dir_all(dir)
                .and_then(|_| fs::write(&graph_path, failure.instance.build().to_edge_list()))
                .and_then(|_| fs::write(&manifest_path, manifest_body));
            if let Err(e) = wrote {
                eprintln!("ginv selfcheck: cannot write replay files: {e}");
            }
            if !json {
                println!("{}/{} consistent", outcome.consistent, outcome.checked);
            }
            eprintln!(
                "selfcheck failed on check '{}' ({}); instance written to {} (manifest {})",
                failure.check,
                failure.detail,
                graph_path.display(),
                manifest_path.display()
            );
            exit_codes::INTERNAL
        }
    }
}
