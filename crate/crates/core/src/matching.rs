//! Unique-perfect-matching certification, the pair digraph obtained by
//! orienting R→C and contracting the matching, alternating-path statistics
//! (τ, τ_e, τ_o), M-spans, and flower recognition.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, NotFlowerReason, Result};
use crate::graph::{BipartiteGraph, Side};

/// A perfect matching together with the pendant-elimination order that
/// certifies it is the only one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Matching {
    /// Sorted vertex pairs (min, max).
    edges: Vec<(usize, usize)>,
    /// (pendant, matched partner) per elimination step. Replaying the steps
    /// (each pendant must have degree 1 when its step runs, both endpoints
    /// are then deleted) empties the graph.
    elimination_order: Vec<(usize, usize)>,
}

impl Matching {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn elimination_order(&self) -> &[(usize, usize)] {
        &self.elimination_order
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Matched partner of `v`, if v is covered.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Matched pairs oriented as (r, c), in elimination order.
    pub fn pairs(&self, g: &BipartiteGraph) -> Vec<(usize, usize)> {
        self.elimination_order
            .iter()
            .map(|&(p, q)| if g.side(p) == Side::R { (p, q) } else { (q, p) })
            .collect()
    }

    /// Replay the elimination order against `g`: every step must remove a
    /// current pendant with its unique neighbor, and the graph must be empty
    /// afterwards. Returns the reconstructed matching edges.
    pub fn verify(&self, g: &BipartiteGraph) -> Result<()> {
        let n = g.n();
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut removed = 0usize;
        let mut rebuilt = Vec::new();
        for &(p, q) in &self.elimination_order {
            if p >= n || q >= n || !alive[p] || !alive[q] {
                return Err(Error::PreconditionViolated(format!("elimination step ({p},{q}) touches a removed vertex")));
            }
            if deg[p] != 1 || !g.has_edge(p, q) {
                return Err(Error::PreconditionViolated(format!("vertex {p} is not a pendant with partner {q} at its step")));
            }
            alive[p] = false;
            alive[q] = false;
            removed += 2;
            for v in [p, q] {
                for &w in g.neighbors(v) {
                    if alive[w] {
                        deg[w] -= 1;
                    }
                }
            }
            rebuilt.push((p.min(q), p.max(q)));
        }
        if removed != n {
            return Err(Error::PreconditionViolated("elimination order does not empty the graph".into()));
        }
        rebuilt.sort_unstable();
        if rebuilt != self.edges {
            return Err(Error::PreconditionViolated("elimination order does not reconstruct the matching".into()));
        }
        Ok(())
    }
}

/// Certify that `g` has a unique perfect matching by pendant elimination
/// (always the smallest-id pendant first). When elimination stalls, a
/// maximum matching by augmenting paths distinguishes "no perfect matching"
/// from "more than one", the latter with an alternating-cycle witness.
pub fn unique_perfect_matching(g: &BipartiteGraph) -> Result<Matching> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| deg[v] == 1).map(Reverse).collect();
    let mut alive_count = n;
    let mut order = Vec::new();
    let mut edges = Vec::new();

    while let Some(Reverse(p)) = heap.pop() {
        if !alive[p] || deg[p] != 1 {
            continue; // stale entry
        }
        let q = *g.neighbors(p).iter().find(|&&w| alive[w]).expect("degree 1 vertex has a live neighbor");
        order.push((p, q));
        edges.push((p.min(q), p.max(q)));
        alive[p] = false;
        alive[q] = false;
        alive_count -= 2;
        for v in [p, q] {
            for &w in g.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        heap.push(Reverse(w));
                    }
                }
            }
        }
    }

    if alive_count == 0 {
        edges.sort_unstable();
        return Ok(Matching { edges, elimination_order: order });
    }

    // Elimination stalled. Any isolated survivor rules out a perfect
    // matching outright; otherwise decide via maximum matching.
    let survivors: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let forced = edges.len();
    if survivors.iter().any(|&v| deg[v] == 0) {
        let max_extra = kuhn_max_matching(g, &alive).len();
        return Err(Error::NoPerfectMatching { matched: 2 * (forced + max_extra), needed: n });
    }
    let extra = kuhn_max_matching(g, &alive);
    if 2 * extra.len() < survivors.len() {
        return Err(Error::NoPerfectMatching { matched: 2 * (forced + extra.len()), needed: n });
    }

    // A perfect matching exists but is not unique: every survivor has degree
    // >= 2, so the pair digraph of the remainder has minimum out-degree >= 1
    // and therefore a directed cycle, which lifts to an alternating cycle.
    let mut matching = edges;
    matching.extend(extra.iter().map(|&(u, v)| (u.min(v), u.max(v))));
    matching.sort_unstable();
    let cycle = alternating_cycle(g, &alive, &extra);
    Err(Error::NotUnique { matching, cycle })
}

/// Kuhn's augmenting-path maximum matching restricted to `alive` vertices.
/// Deterministic: left vertices ascending, neighbors in sorted order.
fn kuhn_max_matching(g: &BipartiteGraph, alive: &[bool]) -> Vec<(usize, usize)> {
    let n = g.n();
    let lefts: Vec<usize> = (0..n).filter(|&v| alive[v] && g.side(v) == Side::R).collect();
    let mut match_of: Vec<Option<usize>> = vec![None; n];

    fn try_augment(
        g: &BipartiteGraph,
        alive: &[bool],
        u: usize,
        visited: &mut [bool],
        match_of: &mut [Option<usize>],
    ) -> bool {
        for &w in g.neighbors(u) {
            if !alive[w] || visited[w] {
                continue;
            }
            visited[w] = true;
            let next = match_of[w];
            if next.is_none() || try_augment(g, alive, next.unwrap(), visited, match_of) {
                match_of[w] = Some(u);
                match_of[u] = Some(w);
                return true;
            }
        }
        false
    }

    for &u in &lefts {
        let mut visited = vec![false; n];
        try_augment(g, alive, u, &mut visited, &mut match_of);
    }
    lefts
        .iter()
        .filter_map(|&u| match_of[u].map(|w| (u, w)))
        .collect()
}

/// Lift a directed cycle of the remainder's pair digraph to an M-alternating
/// cycle in the graph.
fn alternating_cycle(g: &BipartiteGraph, alive: &[bool], matching: &[(usize, usize)]) -> Vec<usize> {
    let mut pair_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new(); // (r, c)
    for &(u, v) in matching {
        let (r, c) = if g.side(u) == Side::R { (u, v) } else { (v, u) };
        pair_of.insert(r, pairs.len());
        pair_of.insert(c, pairs.len());
        pairs.push((r, c));
    }
    let k = pairs.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (idx, &(r, _)) in pairs.iter().enumerate() {
        for &w in g.neighbors(r) {
            if alive[w] && pair_of.get(&w) != Some(&idx) {
                adj[idx].push(pair_of[&w]);
            }
        }
        adj[idx].sort_unstable();
        adj[idx].dedup();
    }
    // Iterative DFS to find a directed cycle; one must exist here.
    let mut state = vec![0u8; k]; // 0 unvisited, 1 on stack, 2 done
    let mut parent = vec![usize::MAX; k];
    for start in 0..k {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&(u, next)) = stack.last() {
            if next >= adj[u].len() {
                state[u] = 2;
                stack.pop();
                continue;
            }
            stack.last_mut().unwrap().1 += 1;
            let v = adj[u][next];
            match state[v] {
                0 => {
                    state[v] = 1;
                    parent[v] = u;
                    stack.push((v, 0));
                }
                1 => {
                    // Cycle v -> ... -> u -> v in the pair digraph; the
                    // parent chain runs backwards from u to v.
                    let mut cyc_pairs = vec![u];
                    let mut x = u;
                    while x != v {
                        x = parent[x];
                        cyc_pairs.push(x);
                    }
                    cyc_pairs.reverse();
                    // An arc (a, b) is the non-matching edge r_a - c_b, so
                    // the lift alternates r_a, c_b, r_b, c_..., closing with
                    // the matched edge c_{p0} - r_{p0}.
                    let mut cycle = Vec::new();
                    let m = cyc_pairs.len();
                    for i in 0..m {
                        let a = cyc_pairs[i];
                        let b = cyc_pairs[(i + 1) % m];
                        cycle.push(pairs[a].0);
                        cycle.push(pairs[b].1);
                    }
                    return cycle;
                }
                _ => {}
            }
        }
    }
    unreachable!("remainder with all degrees >= 2 always has an alternating cycle")
}

/// The digraph obtained by orienting all edges from R to C and contracting
/// the matching: one vertex per matched pair, an arc a_j -> a_i for every
/// non-matching edge r_j - c_i. Acyclic on certified input.
#[derive(Debug, Clone)]
pub struct PairDag {
    /// (r, c) per pair, indexed by elimination step.
    pairs: Vec<(usize, usize)>,
    /// vertex -> (pair index, side)
    vertex_pair: Vec<(usize, Side)>,
    /// Sorted arc list (from, to).
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    /// Pair indices in the canonical triangular order (sinks first); arcs
    /// always point from a later position to an earlier one.
    order: Vec<usize>,
    /// Inverse of `order`: position of each pair.
    position: Vec<usize>,
}

impl PairDag {
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// (r, c) vertices of a pair.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn pair_of(&self, v: usize) -> (usize, Side) {
        self.vertex_pair[v]
    }

    /// Pair indices in canonical triangular order: position p lists the pair
    /// whose r/c vertices label row/column p of the triangular form.
    pub fn triangular_order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, pair: usize) -> usize {
        self.position[pair]
    }

    pub fn successors(&self, pair: usize) -> &[usize] {
        &self.out[pair]
    }
}

/// Build the pair digraph for a certified (G, M) and verify acyclicity.
pub fn build_dag(g: &BipartiteGraph, m: &Matching) -> Result<PairDag> {
    let n = g.n();
    let pairs = m.pairs(g);
    let k = pairs.len();
    if 2 * k != n {
        return Err(Error::PreconditionViolated("matching does not cover the graph".into()));
    }
    let mut vertex_pair = vec![(usize::MAX, Side::R); n];
    for (idx, &(r, c)) in pairs.iter().enumerate() {
        vertex_pair[r] = (idx, Side::R);
        vertex_pair[c] = (idx, Side::C);
    }
    let mut arcs = Vec::new();
    for &(u, v) in g.edges() {
        let (r, c) = if g.side(u) == Side::R { (u, v) } else { (v, u) };
        let (pr, _) = vertex_pair[r];
        let (pc, _) = vertex_pair[c];
        if pr != pc {
            arcs.push((pr, pc));
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in &arcs {
        out[a].push(b);
        inc[b].push(a);
    }

    // Kahn over out-degrees: emit sinks first, smallest pair index among the
    // available ones. This both proves acyclicity and fixes the canonical
    // triangular order.
    let mut out_deg: Vec<usize> = out.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&p| out_deg[p] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse(p)) = ready.pop() {
        order.push(p);
        for &w in &inc[p] {
            out_deg[w] -= 1;
            if out_deg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() != k {
        let cycle: Vec<usize> = (0..k).filter(|&p| out_deg[p] > 0).collect();
        return Err(Error::CycleFound { cycle });
    }
    let mut position = vec![0usize; k];
    for (pos, &p) in order.iter().enumerate() {
        position[p] = pos;
    }
    Ok(PairDag { pairs, vertex_pair, arcs, out, inc, order, position })
}

/// Counts of M-alternating paths between two vertices, split by the parity
/// of the number of non-matching edges. Counts grow exponentially with the
/// graph, so JSON carries them as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathProfile {
    pub tau: BigInt,
    pub tau_e: BigInt,
    pub tau_o: BigInt,
}

impl Serialize for PathProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PathProfile", 3)?;
        st.serialize_field("tau", &self.tau.to_string())?;
        st.serialize_field("tau_e", &self.tau_e.to_string())?;
        st.serialize_field("tau_o", &self.tau_o.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PathProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            tau: String,
            tau_e: String,
            tau_o: String,
        }
        let raw = Raw::deserialize(d)?;
        let parse =
            |s: &str| s.parse::<BigInt>().map_err(|_| D::Error::custom(format!("bad integer '{s}'")));
        let profile = PathProfile { tau: parse(&raw.tau)?, tau_e: parse(&raw.tau_e)?, tau_o: parse(&raw.tau_o)? };
        if profile.tau != &profile.tau_e + &profile.tau_o {
            return Err(D::Error::custom("tau != tau_e + tau_o"));
        }
        Ok(profile)
    }
}

impl PathProfile {
    pub fn zero() -> Self {
        PathProfile { tau: BigInt::zero(), tau_e: BigInt::zero(), tau_o: BigInt::zero() }
    }

    pub fn from_counts(tau_e: BigInt, tau_o: BigInt) -> Self {
        PathProfile { tau: &tau_e + &tau_o, tau_e, tau_o }
    }

    /// τ_e - τ_o: the signed path count, equal to the inverse-matrix entry.
    pub fn signed(&self) -> BigInt {
        &self.tau_e - &self.tau_o
    }
}

impl PairDag {
    /// τ statistics between two distinct vertices via two dynamic programs
    /// over the topological order: a plain path count and a (-1)^length
    /// signed count.
    pub fn tau(&self, i: usize, j: usize) -> Result<PathProfile> {
        if i == j {
            return Err(Error::SameVertex);
        }
        let (pi, si) = self.pair_of(i);
        let (pj, sj) = self.pair_of(j);
        if pi == pj {
            // The matched edge itself is the only alternating path between
            // the two vertices of a pair.
            return Ok(PathProfile::from_counts(BigInt::one(), BigInt::zero()));
        }
        if si == sj {
            // Alternating paths end with matching edges, so their endpoints
            // lie in opposite parts.
            return Ok(PathProfile::zero());
        }
        // Direction: from the pair of the C endpoint to the pair of the R
        // endpoint (each arc appends one non-matching edge).
        let (from, to) = if si == Side::C { (pi, pj) } else { (pj, pi) };
        let (count, signed) = self.path_counts(from, to);
        let tau_e = (&count + &signed) / 2;
        let tau_o = (&count - &signed) / 2;
        debug_assert_eq!(&tau_e + &tau_o, count);
        Ok(PathProfile::from_counts(tau_e, tau_o))
    }

    /// (#paths from->to, Σ (-1)^len over those paths). Positions decrease
    /// along arcs, so a single sweep down the order suffices.
    fn path_counts(&self, from: usize, to: usize) -> (BigInt, BigInt) {
        let k = self.pair_count();
        let mut count = vec![BigInt::zero(); k];
        let mut signed = vec![BigInt::zero(); k];
        count[from] = BigInt::one();
        signed[from] = BigInt::one();
        let start = self.position[from];
        for pos in (0..=start).rev() {
            let u = self.order[pos];
            if count[u].is_zero() && signed[u].is_zero() {
                continue;
            }
            for &v in &self.out[u] {
                let c = &count[u] + &count[v];
                count[v] = c;
                let s = &signed[v] - &signed[u];
                signed[v] = s;
            }
        }
        (count[to].clone(), signed[to].clone())
    }

    /// Pairs reachable from `p` following arcs (excluding p itself unless on
    /// a cycle, which cannot happen here).
    fn reach_forward(&self, p: usize) -> Vec<bool> {
        self.reach(p, &self.out)
    }

    fn reach_backward(&self, p: usize) -> Vec<bool> {
        self.reach(p, &self.inc)
    }

    fn reach(&self, p: usize, adj: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.pair_count()];
        let mut queue = VecDeque::from([p]);
        seen[p] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

pub fn tau_counts(g: &BipartiteGraph, m: &Matching, i: usize, j: usize) -> Result<PathProfile> {
    build_dag(g, m)?.tau(i, j)
}

/// A subgraph of G given by explicit vertex and edge sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
}

/// Union of the edge sets of all M-alternating paths between pairs of S,
/// computed by reachability / co-reachability intersection in the pair
/// digraph.
pub fn m_span(g: &BipartiteGraph, m: &Matching, s: &BTreeSet<usize>) -> Result<Subgraph> {
    let dag = build_dag(g, m)?;
    let mut out = Subgraph::default();
    let s: Vec<usize> = s.iter().copied().collect();
    for (a_idx, &x) in s.iter().enumerate() {
        for &y in &s[a_idx + 1..] {
            span_of_pair(g, &dag, x, y, &mut out);
        }
    }
    Ok(out)
}

fn span_of_pair(g: &BipartiteGraph, dag: &PairDag, x: usize, y: usize, out: &mut Subgraph) {
    let (px, sx) = dag.pair_of(x);
    let (py, sy) = dag.pair_of(y);
    if px == py {
        let (r, c) = dag.pair(px);
        out.vertices.extend([r, c]);
        out.edges.insert((r.min(c), r.max(c)));
        return;
    }
    if sx == sy {
        return;
    }
    let (from, to) = if sx == Side::C { (px, py) } else { (py, px) };
    let fwd = dag.reach_forward(from);
    if !fwd[to] {
        return;
    }
    let bwd = dag.reach_backward(to);
    // A pair lies on some from->to path iff reachable from `from` and
    // co-reachable from `to`; its matched edge is then part of the span.
    let on_path: Vec<bool> = (0..dag.pair_count()).map(|p| fwd[p] && bwd[p]).collect();
    for (p, &yes) in on_path.iter().enumerate() {
        if yes {
            let (r, c) = dag.pair(p);
            out.vertices.extend([r, c]);
            out.edges.insert((r.min(c), r.max(c)));
        }
    }
    // An arc (u, v) lies on some from->to path iff u is reachable and v
    // co-reachable; it contributes the non-matching edge r_u - c_v.
    for &(u, v) in dag.arcs() {
        if fwd[u] && bwd[v] {
            let (r, _) = dag.pair(u);
            let (_, c) = dag.pair(v);
            // r and c are adjacent in G by construction of the arc.
            debug_assert!(g.has_edge(r, c));
            out.edges.insert((r.min(c), r.max(c)));
        }
    }
}

/// A flower: vertices of S in cyclic order such that τ_o ≠ τ_e exactly for
/// consecutive pairs, with all pairwise profiles and the count of pairs
/// where τ_o > τ_e. Odd flowers are the obstruction to a balanced inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerCertificate {
    /// x_1 .. x_k in cyclic order.
    pub order: Vec<usize>,
    /// Profile per unordered pair {u, v} of S, keyed (min, max).
    pub profiles: BTreeMap<(usize, usize), PathProfile>,
    /// Number of vertex pairs with τ_o > τ_e.
    pub negative_pairs: usize,
    pub odd: bool,
}

impl FlowerCertificate {
    pub fn profile(&self, u: usize, v: usize) -> Option<&PathProfile> {
        self.profiles.get(&(u.min(v), u.max(v)))
    }
}

impl Serialize for FlowerCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let profiles: BTreeMap<String, &PathProfile> =
            self.profiles.iter().map(|(&(u, v), p)| (format!("{u}-{v}"), p)).collect();
        let mut st = s.serialize_struct("FlowerCertificate", 4)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("profiles", &profiles)?;
        st.serialize_field("negative_pairs", &self.negative_pairs)?;
        st.serialize_field("odd", &self.odd)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FlowerCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: Vec<usize>,
            profiles: BTreeMap<String, PathProfile>,
            negative_pairs: usize,
            odd: bool,
        }
        let raw = Raw::deserialize(d)?;
        let mut profiles = BTreeMap::new();
        for (key, prof) in raw.profiles {
            let (u, v) = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad profile key '{key}'")))?;
            if u >= v {
                return Err(D::Error::custom(format!("profile key '{key}' is not ordered")));
            }
            profiles.insert((u, v), prof);
        }
        Ok(FlowerCertificate { order: raw.order, profiles, negative_pairs: raw.negative_pairs, odd: raw.odd })
    }
}

/// Decide whether S spans a flower: the auxiliary graph H on S (edges where
/// τ_o ≠ τ_e) must be a single spanning cycle. The returned order is the
/// traversal of H from its smallest vertex toward its smaller neighbor.
pub fn flower_check(g: &BipartiteGraph, m: &Matching, s: &BTreeSet<usize>) -> Result<FlowerCertificate> {
    if s.len() < 3 {
        return Err(Error::SizeTooSmall(s.len()));
    }
    let dag = build_dag(g, m)?;
    let verts: Vec<usize> = s.iter().copied().collect();
    let mut profiles = BTreeMap::new();
    let mut h_adj: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    let mut negative_pairs = 0usize;
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let prof = dag.tau(u, v)?;
            if prof.tau_o != prof.tau_e {
                h_adj.get_mut(&u).unwrap().push(v);
                h_adj.get_mut(&v).unwrap().push(u);
                if prof.tau_o > prof.tau_e {
                    negative_pairs += 1;
                }
            }
            profiles.insert((u, v), prof);
        }
    }
    for (&v, nbrs) in &h_adj {
        if nbrs.len() != 2 {
            return Err(Error::NotFlower(NotFlowerReason::NotTwoRegular { vertex: v, degree: nbrs.len() }));
        }
    }
    // 2-regular: H is a disjoint union of cycles; a flower needs exactly one.
    let start = verts[0];
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *h_adj[&start].iter().min().unwrap();
    while cur != start {
        order.push(cur);
        let nbrs = &h_adj[&cur];
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
    }
    if order.len() != verts.len() {
        return Err(Error::NotFlower(NotFlowerReason::NotSingleCycle));
    }
    Ok(FlowerCertificate { order, profiles, negative_pairs, odd: negative_pairs % 2 == 1 })
}
