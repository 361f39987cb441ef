//! Cross-validation of every fast algorithm against its brute-force oracle
//! on seeded random corpora.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use ginv_core::balance::{analyze, is_balanced, BalanceVerdict, InverseKind};
use ginv_core::error::Error;
use ginv_core::graph::BipartiteGraph;
use ginv_core::linalg::{
    assemble_adjacency, assemble_inverse_adjacency, det_adjacency, invert_unit_lower_triangular,
    permute_to_triangular,
};
use ginv_core::matching::{build_dag, tau_counts, unique_perfect_matching};
use ginv_core::matrix::IntegerMatrix;
use ginv_core::oracle::{
    balance_exhaustive, bareiss_determinant, det_via_sachs, enumerate_alternating_paths,
    enumerate_perfect_matchings, inverse_entry_via_paths_sachs, quotient_by_matching,
    random_unique_pm_graph, SplitMix64,
};
use ginv_core::poset::{mobius_matrix, poset_from_dag};

/// Rational Gauss-Jordan inverse, written only for this test file so the
/// path/Sachs oracle is checked against an unrelated route.
fn rational_inverse(a: &IntegerMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(a.get(i, j).clone()))
                .chain((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in &mut m[col] {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn random_simple_graph(n: usize, p: f64, rng: &mut SplitMix64) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    (n, edges)
}

#[test]
fn determinant_three_routes_agree() {
    for seed in 0..60u64 {
        let pairs = 2 + (seed % 5) as usize;
        let g = random_unique_pm_graph(pairs, 0.4, seed);
        let m = unique_perfect_matching(&g).unwrap();
        let tri = permute_to_triangular(&g, &m).unwrap();
        let a = assemble_adjacency(&tri.l);
        let formula = BigInt::from(det_adjacency(&g, &m));
        assert_eq!(formula, bareiss_determinant(&a), "bareiss disagrees at seed {seed}");
        assert_eq!(formula, det_via_sachs(g.n(), g.edges()).unwrap(), "sachs disagrees at seed {seed}");
    }
}

#[test]
fn sachs_determinant_matches_bareiss_on_general_graphs() {
    let mut rng = SplitMix64::new(0xdecaf);
    for trial in 0..40 {
        let n = 2 + (trial % 7);
        let (n, edges) = random_simple_graph(n, 0.5, &mut rng);
        let mut a = IntegerMatrix::zero(n, n);
        for &(u, v) in &edges {
            a.set(u, v, BigInt::one());
            a.set(v, u, BigInt::one());
        }
        assert_eq!(det_via_sachs(n, &edges).unwrap(), bareiss_determinant(&a), "trial {trial}");
    }
}

#[test]
fn path_sachs_oracle_reproduces_rational_inverse() {
    let mut rng = SplitMix64::new(0xfeed);
    let mut checked = 0;
    while checked < 50 {
        let n = 3 + rng.below(6); // up to 8 vertices
        let (n, edges) = random_simple_graph(n, 0.55, &mut rng);
        let mut a = IntegerMatrix::zero(n, n);
        for &(u, v) in &edges {
            a.set(u, v, BigInt::one());
            a.set(v, u, BigInt::one());
        }
        if bareiss_determinant(&a).is_zero() {
            continue;
        }
        let inv = rational_inverse(&a).expect("nonzero determinant inverts");
        for i in 0..n {
            for j in 0..n {
                let oracle = inverse_entry_via_paths_sachs(n, &edges, i, j).unwrap();
                assert_eq!(oracle, inv[i][j], "entry ({i},{j}) disagrees");
            }
        }
        checked += 1;
    }
}

#[test]
fn tau_dp_matches_enumeration() {
    for seed in 100..130u64 {
        let pairs = 2 + (seed % 6) as usize; // up to 7 pairs
        let g = random_unique_pm_graph(pairs, 0.45, seed);
        let m = unique_perfect_matching(&g).unwrap();
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let fast = tau_counts(&g, &m, u, v).unwrap();
                let slow = enumerate_alternating_paths(&g, &m, u, v).unwrap();
                assert_eq!(fast, slow, "seed {seed} pair ({u},{v})");
                // Symmetry.
                assert_eq!(fast, tau_counts(&g, &m, v, u).unwrap());
                // Same part of the bipartition: no alternating paths.
                if g.side(u) == g.side(v) {
                    assert!(fast.tau.is_zero());
                }
            }
        }
    }
}

#[test]
fn inverse_entries_are_signed_path_counts() {
    for seed in 200..240u64 {
        let pairs = 2 + (seed % 6) as usize;
        let g = random_unique_pm_graph(pairs, 0.5, seed);
        let analysis = analyze(&g).unwrap();
        let inv = &analysis.inverse;
        let m = &analysis.matching;
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let signed = enumerate_alternating_paths(&g, m, u, v).unwrap().signed();
                match inv.weight(u, v) {
                    Some(w) => assert_eq!(*w, signed, "seed {seed} edge ({u},{v})"),
                    None => assert!(signed.is_zero(), "seed {seed} pair ({u},{v})"),
                }
            }
        }
        // tau statistics are the (j, i) entries of the inverse adjacency.
        let a_inv = assemble_inverse_adjacency(&analysis.b_inv);
        let tri = &analysis.tri;
        let k = tri.pair_order.len();
        for p in 0..k {
            for q in 0..k {
                let (r, _) = tri.pair_order[p];
                let (_, c) = tri.pair_order[q];
                let t = tau_counts(&g, m, r, c).unwrap();
                // Vertex r sits at block index p, vertex c at block k + q.
                assert_eq!(*a_inv.get(p, k + q), t.signed(), "seed {seed} entry ({p},{q})");
            }
        }
    }
}

#[test]
fn product_of_adjacency_and_assembled_inverse_is_identity() {
    for seed in 300..330u64 {
        let pairs = 1 + (seed % 7) as usize;
        let g = random_unique_pm_graph(pairs, 0.5, seed);
        let m = unique_perfect_matching(&g).unwrap();
        let tri = permute_to_triangular(&g, &m).unwrap();
        let b_inv = invert_unit_lower_triangular(&tri.l).unwrap();
        let a = assemble_adjacency(&tri.l);
        let a_inv = assemble_inverse_adjacency(&b_inv);
        assert!(a.mul(&a_inv).is_identity(), "seed {seed}");
        assert!(a_inv.is_symmetric());
    }
}

#[test]
fn balance_agrees_with_exhaustive_switching() {
    for seed in 400..480u64 {
        let pairs = 2 + (seed % 7) as usize; // up to 16 vertices
        let g = random_unique_pm_graph(pairs, 0.5, seed);
        let m = unique_perfect_matching(&g).unwrap();
        let inv = ginv_core::balance::inverse_graph(&g, &m).unwrap();
        let fast = is_balanced(&inv);
        let slow = balance_exhaustive(&inv).unwrap();
        match (&fast, &slow) {
            (BalanceVerdict::Balanced(zeta), BalanceVerdict::Balanced(_)) => {
                let switched = ginv_core::balance::apply_switching(&inv, zeta).unwrap();
                assert!(switched.edges().iter().all(|(_, _, w)| w.is_positive()));
            }
            (BalanceVerdict::Unbalanced { cycle }, BalanceVerdict::Unbalanced { cycle: c2 }) => {
                assert_eq!(inv.cycle_sign(cycle), Some(-1));
                assert_eq!(inv.cycle_sign(c2), Some(-1));
            }
            _ => panic!("seed {seed}: fast {fast:?} disagrees with oracle {slow:?}"),
        }
    }
}

#[test]
fn main_theorem_dichotomy_on_random_corpus() {
    for seed in 500..700u64 {
        let pairs = 1 + (seed % 8) as usize;
        let g = random_unique_pm_graph(pairs, 0.45, seed);
        let analysis = analyze(&g).unwrap();
        let m = &analysis.matching;
        let flower = ginv_core::balance::find_odd_flower(&g, m).unwrap();
        match (&analysis.kind, &flower) {
            (InverseKind::Nonnegative { b_plus, d, .. }, None) => {
                assert!(b_plus.is_nonnegative(), "seed {seed}");
                // D B^-1 D recomputed from scratch.
                let k = analysis.b_inv.rows();
                for i in 0..k {
                    for j in 0..k {
                        let v = analysis.b_inv.get(i, j) * BigInt::from(d[i] as i64 * d[j] as i64);
                        assert_eq!(&v, b_plus.get(i, j));
                    }
                }
            }
            (InverseKind::OddFlower(cert), Some(found)) => {
                assert!(cert.odd && found.odd, "seed {seed}");
                assert_eq!(cert.negative_pairs % 2, 1);
                // The certificate re-validates through flower_check.
                let s: BTreeSet<usize> = cert.order.iter().copied().collect();
                let again = ginv_core::matching::flower_check(&g, m, &s).unwrap();
                assert!(again.odd);
            }
            (kind, flower) => panic!("seed {seed}: {kind:?} vs flower={flower:?}"),
        }
        // Thm 1.2: bipartite matching-quotient forces the balanced outcome.
        let (_, quotient_bipartite) = quotient_by_matching(&g, m);
        if quotient_bipartite {
            assert!(matches!(analysis.kind, InverseKind::Nonnegative { .. }), "seed {seed}");
        }
        // The pair digraph of certified input is always acyclic.
        assert!(build_dag(&g, m).is_ok(), "seed {seed}");
        // Zeta at 0 equals the triangular form.
        let dag = build_dag(&g, m).unwrap();
        assert_eq!(ginv_core::poset::zeta_at(&dag, 0), analysis.tri.l, "seed {seed}");
    }
}

#[test]
fn uniqueness_classification_matches_enumeration() {
    let mut rng = SplitMix64::new(0xabcde);
    let mut seen_not_unique = 0;
    let mut seen_no_pm = 0;
    let mut seen_unique = 0;
    for _ in 0..250 {
        let n = 2 + 2 * rng.below(5); // even sizes up to 10
        let p = 0.2 + 0.1 * rng.below(5) as f64;
        // Random bipartite graph: vertices split by parity of id.
        let mut edges = Vec::new();
        for u in (0..n).step_by(2) {
            for v in (1..n).step_by(2) {
                if rng.bernoulli(p) {
                    edges.push((u, v));
                }
            }
        }
        let Ok(g) = BipartiteGraph::new(n, &edges) else { continue };
        let count = enumerate_perfect_matchings(&g).unwrap().len();
        match unique_perfect_matching(&g) {
            Ok(m) => {
                assert_eq!(count, 1, "certified unique but oracle found {count}");
                m.verify(&g).unwrap();
                seen_unique += 1;
            }
            Err(Error::NoPerfectMatching { .. }) => {
                assert_eq!(count, 0, "claimed no PM but oracle found {count}");
                seen_no_pm += 1;
            }
            Err(Error::NotUnique { matching, cycle }) => {
                assert!(count >= 2, "claimed non-unique but oracle found {count}");
                // The returned matching is perfect and the witness cycle
                // alternates along graph edges.
                assert_eq!(2 * matching.len(), g.n());
                for i in 0..cycle.len() {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
                let m_set: BTreeSet<(usize, usize)> = matching.iter().copied().collect();
                let on_cycle: Vec<bool> = (0..cycle.len())
                    .map(|i| {
                        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                        m_set.contains(&(u.min(v), u.max(v)))
                    })
                    .collect();
                // Alternating: matched edges alternate with unmatched ones.
                for i in 0..on_cycle.len() {
                    assert_ne!(on_cycle[i], on_cycle[(i + 1) % on_cycle.len()], "witness does not alternate");
                }
                seen_not_unique += 1;
            }
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
    assert!(seen_unique > 5, "corpus never hit the unique case");
    assert!(seen_no_pm > 5, "corpus never hit the no-PM case");
    assert!(seen_not_unique > 5, "corpus never hit the non-unique case");
}

#[test]
fn mobius_recurrence_on_random_dag_closures() {
    for seed in 800..830u64 {
        let pairs = 2 + (seed % 6) as usize;
        let g = random_unique_pm_graph(pairs, 0.5, seed);
        let m = unique_perfect_matching(&g).unwrap();
        let dag = build_dag(&g, &m).unwrap();
        let p = poset_from_dag(&dag);
        let z = p.zeta_matrix();
        let mob = mobius_matrix(&p);
        assert!(z.mul(&mob).is_identity(), "seed {seed}");
        for i in 0..p.len() {
            for j in 0..p.len() {
                if !p.leq(i, j) {
                    continue;
                }
                let mut sum = BigInt::zero();
                for mid in 0..p.len() {
                    if p.leq(i, mid) && p.leq(mid, j) {
                        sum += ginv_core::poset::mobius_value(&mob, mid, j);
                    }
                }
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(sum, expect, "seed {seed} interval ({i},{j})");
            }
        }
    }
}

#[test]
fn generator_outputs_pass_their_own_certification() {
    for seed in 0..30u64 {
        let g = random_unique_pm_graph(1 + (seed % 9) as usize, 0.6, seed);
        let m = unique_perfect_matching(&g).unwrap();
        m.verify(&g).unwrap();
        let tri = permute_to_triangular(&g, &m).unwrap();
        assert!(tri.l.is_unit_lower_triangular_01());

        let t = ginv_core::oracle::random_matched_tree(1 + (seed % 12) as usize, seed);
        assert_eq!(t.edge_count() + 1, t.n() as usize, "trees have n-1 edges");
        unique_perfect_matching(&t).unwrap();
    }
}
