//! The cross-validation battery behind `ginv selfcheck`: every fast
//! algorithm against its brute-force oracle on seeded random instances, with
//! a replayable counterexample on the first discrepancy.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use ginv_core::balance::{analyze, find_odd_flower, is_balanced, BalanceVerdict, InverseKind};
use ginv_core::graph::BipartiteGraph;
use ginv_core::linalg::{assemble_adjacency, assemble_inverse_adjacency};
use ginv_core::matching::build_dag;
use ginv_core::matrix::IntegerMatrix;
use ginv_core::oracle::{
    balance_exhaustive, bareiss_determinant, det_via_sachs, enumerate_alternating_paths,
    enumerate_perfect_matchings, quotient_by_matching, random_unique_pm_graph, BALANCE_ORACLE_BOUND,
    MATCHING_ORACLE_BOUND, PATH_ORACLE_PAIR_BOUND, SACHS_ORACLE_BOUND,
};
use ginv_core::poset::{mobius_matrix, poset_from_dag, zeta_at};

/// One regenerable corpus record; manifests are lists of these.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub generator: String,
    pub parameters: GenParams,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenParams {
    pub pairs: usize,
    pub p: f64,
}

impl InstanceSpec {
    pub fn unique_pm(pairs: usize, p: f64, seed: u64) -> Self {
        InstanceSpec { generator: "unique_pm".into(), parameters: GenParams { pairs, p }, seed }
    }

    pub fn matched_tree(pairs: usize, seed: u64) -> Self {
        InstanceSpec { generator: "matched_tree".into(), parameters: GenParams { pairs, p: 0.0 }, seed }
    }

    pub fn build(&self) -> BipartiteGraph {
        match self.generator.as_str() {
            "matched_tree" => ginv_core::oracle::random_matched_tree(self.parameters.pairs, self.seed),
            _ => random_unique_pm_graph(self.parameters.pairs, self.parameters.p, self.seed),
        }
    }
}

/// Densities cycled across instances.
const DENSITIES: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];

/// Instance i of a run: pairs cycle 1..=max_pairs, densities cycle, and the
/// seed is base + i.
pub fn instance_spec(max_pairs: usize, base_seed: u64, i: u64) -> InstanceSpec {
    InstanceSpec::unique_pm(
        1 + (i as usize % max_pairs),
        DENSITIES[(i as usize / max_pairs) % DENSITIES.len()],
        base_seed.wrapping_add(i),
    )
}

#[derive(Debug, Serialize)]
pub struct SelfcheckOutcome {
    pub checked: u64,
    pub consistent: u64,
    pub failure: Option<Failure>,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub instance: InstanceSpec,
    pub check: String,
    pub detail: String,
}

/// Run the battery; stops at the first discrepancy. `inject_fault` corrupts
/// one computed value on instance 0 to prove the harness catches lies.
pub fn run(max_pairs: usize, count: u64, base_seed: u64, inject_fault: bool) -> SelfcheckOutcome {
    for i in 0..count {
        let spec = instance_spec(max_pairs, base_seed, i);
        let g = spec.build();
        if let Err((check, detail)) = check_instance(&g, inject_fault && i == 0) {
            return SelfcheckOutcome {
                checked: i + 1,
                consistent: i,
                failure: Some(Failure { instance: spec, check, detail }),
            };
        }
    }
    SelfcheckOutcome { checked: count, consistent: count, failure: None }
}

type CheckResult = Result<(), (String, String)>;

fn fail(check: &str, detail: impl Into<String>) -> CheckResult {
    Err((check.into(), detail.into()))
}

pub fn check_instance(g: &BipartiteGraph, inject_fault: bool) -> CheckResult {
    let analysis = match analyze(g) {
        Ok(a) => a,
        Err(e) => return fail("pipeline", e.to_string()),
    };
    let m = &analysis.matching;

    // Matching certificate replays, and the enumeration oracle agrees the
    // matching is unique.
    if let Err(e) = m.verify(g) {
        return fail("matching_replay", e.to_string());
    }
    if g.n() <= MATCHING_ORACLE_BOUND {
        match enumerate_perfect_matchings(g) {
            Ok(all) if all.len() == 1 => {}
            Ok(all) => return fail("matching_unique", format!("oracle found {} matchings", all.len())),
            Err(e) => return fail("matching_unique", e.to_string()),
        }
    }

    // Pair digraph acyclicity.
    let dag = match build_dag(g, m) {
        Ok(d) => d,
        Err(e) => return fail("dag_acyclic", e.to_string()),
    };

    // Determinant: formula vs fraction-free elimination vs Sachs expansion.
    let mut det_formula = BigInt::from(analysis.det);
    if inject_fault {
        det_formula = -det_formula;
    }
    let a = assemble_adjacency(&analysis.tri.l);
    let det_bareiss = bareiss_determinant(&a);
    if det_formula != det_bareiss {
        return fail("det_routes", format!("formula {det_formula} vs elimination {det_bareiss}"));
    }
    if g.n() <= SACHS_ORACLE_BOUND {
        match det_via_sachs(g.n(), g.edges()) {
            Ok(d) if d == det_formula => {}
            Ok(d) => return fail("det_routes", format!("formula {det_formula} vs sachs {d}")),
            Err(e) => return fail("det_routes", e.to_string()),
        }
    }

    // Zeta at 0 recovers the triangular form.
    if zeta_at(&dag, 0) != analysis.tri.l {
        return fail("zeta_zero", "zeta_at(0) differs from triangular B");
    }

    // Exact product check A * assembled(B^-1) = I.
    let a_inv = assemble_inverse_adjacency(&analysis.b_inv);
    if !a.mul(&a_inv).is_identity() {
        return fail("inverse_product", "A * A^-1 != I");
    }

    // Inverse weights equal signed alternating-path counts, edge by edge.
    if m.len() <= PATH_ORACLE_PAIR_BOUND {
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let signed = match enumerate_alternating_paths(g, m, u, v) {
                    Ok(p) => p.signed(),
                    Err(e) => return fail("inverse_formula", e.to_string()),
                };
                let actual = analysis.inverse.weight(u, v).cloned().unwrap_or_else(BigInt::zero);
                if actual != signed {
                    return fail("inverse_formula", format!("edge ({u},{v}): matrix {actual} vs paths {signed}"));
                }
            }
        }
    }

    // Balance vs exhaustive switching.
    if g.n() <= BALANCE_ORACLE_BOUND {
        let fast = is_balanced(&analysis.inverse);
        let slow = match balance_exhaustive(&analysis.inverse) {
            Ok(v) => v,
            Err(e) => return fail("balance_oracle", e.to_string()),
        };
        let fast_bal = matches!(fast, BalanceVerdict::Balanced(_));
        let slow_bal = matches!(slow, BalanceVerdict::Balanced(_));
        if fast_bal != slow_bal {
            return fail("balance_oracle", format!("fast balanced={fast_bal}, exhaustive balanced={slow_bal}"));
        }
    }

    // Main dichotomy: non-negative form XOR odd flower, witnesses verified.
    let flower = match find_odd_flower(g, m) {
        Ok(f) => f,
        Err(e) => return fail("main_theorem", e.to_string()),
    };
    match (&analysis.kind, &flower) {
        (InverseKind::Nonnegative { b_plus, d, .. }, None) => {
            if !b_plus.is_nonnegative() {
                return fail("main_theorem", "B_plus has a negative entry");
            }
            let k = analysis.b_inv.rows();
            let mut recomputed = IntegerMatrix::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    let v = analysis.b_inv.get(i, j) * BigInt::from(d[i] as i64 * d[j] as i64);
                    recomputed.set(i, j, v);
                }
            }
            if &recomputed != b_plus {
                return fail("main_theorem", "B_plus != D B^-1 D");
            }
        }
        (InverseKind::OddFlower(cert), Some(found)) => {
            if !cert.odd || !found.odd {
                return fail("main_theorem", "flower certificate is not odd");
            }
            if cert.negative_pairs % 2 != 1 {
                return fail("main_theorem", "even count of negative pairs");
            }
        }
        (kind, flower) => {
            let k = if matches!(kind, InverseKind::Nonnegative { .. }) { "nonnegative" } else { "odd_flower" };
            return fail("main_theorem", format!("analysis says {k} but find_odd_flower says {:?}", flower.is_some()));
        }
    }

    // Bipartite matching-quotient forces the non-negative outcome.
    let (_, quotient_bipartite) = quotient_by_matching(g, m);
    if quotient_bipartite && !matches!(analysis.kind, InverseKind::Nonnegative { .. }) {
        return fail("quotient_theorem", "bipartite G/M but no non-negative form");
    }

    // Zeta * Mobius = I on the closure poset.
    let poset = poset_from_dag(&dag);
    let z = poset.zeta_matrix();
    let mob = mobius_matrix(&poset);
    if !z.mul(&mob).is_identity() {
        return fail("mobius", "Zeta * Mobius != I");
    }

    Ok(())
}
