//! Spanner construction.
//!
//! * [`extend_subtree`] grows a subtree `S` to reach a vertex set `U` along
//!   BFS paths from `V(S)`, so every `u ∈ U` keeps its `G`-distance to `S`
//!   and no new leaves appear outside `U`.
//! * [`complete_spanner`] extends a `ρ`-additive subtree that is within `ρ'`
//!   of every vertex to an additive tree `(ρ + 4ρ')`-spanner.
//! * [`core_subtree`] walks the nested sequence of the decomposition tree
//!   from its last level back to `T_0`, producing a `16ρ·d(T)`-additive
//!   subtree meeting every bag.
//! * [`build_spanner`] chains the two into an additive tree
//!   `8ρ(2·d(T) + 1)`-spanner.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{self, bfs_levels, parent_of, Graph};
use crate::subtree::SubtreeOfGraph;
use crate::tree_metrics::{branch_and_leaf, nested_sequence};
use crate::treedec::{self, TreeDecomposition};
use crate::verify::{self, Ratio, StretchReport, VerifyMode};
use crate::{Error, Result};

/// How much of the construction is re-verified by measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum CheckLevel {
    /// Measure nothing beyond the final stretch report.
    Off,
    /// Also measure the completion preconditions (additivity of the core
    /// subtree and its distance to every vertex).
    Final,
    /// Also check every extension step and every level of the core subtree.
    PerLevel,
}

/// Orders at or above this default to [`CheckLevel::Final`].
pub const PER_LEVEL_DEFAULT_LIMIT: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub check: CheckLevel,
    pub verify: VerifyMode,
}

impl BuildOptions {
    /// Per-level checks below [`PER_LEVEL_DEFAULT_LIMIT`] vertices, final
    /// checks above; exact verification.
    pub fn for_order(n: usize) -> Self {
        let check = if n < PER_LEVEL_DEFAULT_LIMIT { CheckLevel::PerLevel } else { CheckLevel::Final };
        BuildOptions { check, verify: VerifyMode::Exact }
    }
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { check: CheckLevel::PerLevel, verify: VerifyMode::Exact }
    }
}

/// State of the core subtree after one level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LevelSnapshot {
    /// Index `i` of the decomposition-tree level `T_i`.
    pub level: usize,
    pub tree_nodes: usize,
    /// `V(S_i)`.
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    /// Hitting set used to grow `S_{i+1}` into `S_i` (empty at the last level).
    pub chosen: Vec<usize>,
    /// Allowed additive slack `16ρ(d - i)`.
    pub slack_bound: u32,
    /// Exact slack, when per-level checks ran.
    pub measured_slack: Option<u32>,
    pub meets_all_bags: bool,
    /// Leaf pairs of `S_i` with no pair of distinct branch-or-leaf nodes of
    /// `T_i` housing them; diagnostic only.
    pub leaf_pairs_without_witness: Option<usize>,
    /// Adjacency entries scanned while growing this level.
    pub scanned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BuildTrace {
    /// Breadth of the (normalized) decomposition.
    pub rho: u32,
    /// `d(T)` of the (normalized) decomposition tree.
    pub d: usize,
    pub decomposition_nodes: usize,
    /// One snapshot per level, from `T_d` down to `T_0`.
    pub levels: Vec<LevelSnapshot>,
}

/// Grows `s` so it contains `u_set`: multi-source BFS from `V(s)` (parent =
/// smallest-id neighbor one level up), then the union of `s` with the BFS
/// paths from each `u ∈ u_set` back to `s`.
pub fn extend_subtree(g: &Graph, s: &SubtreeOfGraph, u_set: &[usize]) -> Result<SubtreeOfGraph> {
    Ok(extend(g, s, u_set)?.0)
}

fn extend(g: &Graph, s: &SubtreeOfGraph, u_set: &[usize]) -> Result<(SubtreeOfGraph, u64)> {
    if s.host_order() != g.order() {
        return Err(Error::OrderMismatch { decomposition: s.host_order(), graph: g.order() });
    }
    for &u in u_set {
        g.check_vertex(u)?;
    }
    if u_set.iter().all(|&u| s.contains(u)) {
        return Ok((s.clone(), 0));
    }
    let mut dist = vec![u32::MAX; g.order()];
    bfs_levels(g, s.vertices(), &mut dist, &mut VecDeque::new());
    let scanned = dist
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != u32::MAX)
        .map(|(v, _)| g.degree(v) as u64)
        .sum();
    let mut member = s.membership().to_vec();
    let mut edges = s.edges().to_vec();
    for &u in u_set {
        if dist[u] == u32::MAX {
            return Err(Error::Disconnected);
        }
        let mut v = u;
        while !member[v] {
            member[v] = true;
            let p = parent_of(g, &dist, v).expect("non-source vertices have a parent");
            edges.push((v, p));
            v = p;
        }
    }
    Ok((SubtreeOfGraph::from_parts(g.order(), member, edges), scanned))
}

/// Checks both guarantees of [`extend_subtree`] by measurement:
/// `d_{S'}(u, V(S)) = d_G(u, V(S))` for `u ∈ U`, and `L(S') ⊆ L(S) ∪ U`.
pub fn check_extension(g: &Graph, s: &SubtreeOfGraph, u_set: &[usize], extended: &SubtreeOfGraph) -> Result<()> {
    let fail = |what| Err(Error::InvariantViolated { level: 0, what });
    if s.vertices().iter().any(|&v| !extended.contains(v)) || s.edges().iter().any(|e| extended.edges().binary_search(e).is_err()) {
        return fail("extension does not contain the original subtree".into());
    }
    let n = g.order();
    let mut in_g = vec![u32::MAX; n];
    let mut in_s = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    bfs_levels(g, s.vertices(), &mut in_g, &mut queue);
    bfs_levels(&extended.to_graph(), s.vertices(), &mut in_s, &mut queue);
    for &u in u_set {
        if !extended.contains(u) {
            return fail(format!("vertex {u} of U not reached"));
        }
        if in_g[u] != in_s[u] {
            return fail(format!("vertex {u}: distance {} in extension, {} in graph", in_s[u], in_g[u]));
        }
    }
    let old_leaves = s.leaves();
    for leaf in extended.leaves() {
        if old_leaves.binary_search(&leaf).is_err() && !u_set.contains(&leaf) {
            return fail(format!("new leaf {leaf} outside U"));
        }
    }
    Ok(())
}

/// Extends `s` to a spanning tree. If `s` is `rho_add`-additive and every
/// vertex is within `rho_prime` of `V(s)`, the result is an additive tree
/// `(rho_add + 4·rho_prime)`-spanner.
///
/// With `verify_preconditions` both premises are measured first and a
/// violation is returned as an error with a witness.
pub fn complete_spanner(
    g: &Graph,
    s: &SubtreeOfGraph,
    rho_add: u32,
    rho_prime: u32,
    verify_preconditions: bool,
) -> Result<SubtreeOfGraph> {
    if verify_preconditions {
        let (slack, witness) = verify::subtree_additive_slack(g, s);
        if slack > rho_add {
            return Err(Error::NotAdditive { bound: rho_add, measured: slack, witness });
        }
        let (far, vertex) = verify::max_distance_to_subtree(g, s)?;
        if far > rho_prime {
            return Err(Error::TooFar { bound: rho_prime, measured: far, vertex });
        }
    }
    let rest: Vec<usize> = (0..g.order()).filter(|&v| !s.contains(v)).collect();
    extend_subtree(g, s, &rest)
}

/// BFS spanning tree rooted at `root` (smallest-id parent tie-break).
pub fn bfs_spanning_tree(g: &Graph, root: usize) -> Result<SubtreeOfGraph> {
    let s = SubtreeOfGraph::single(g, root)?;
    let all: Vec<usize> = (0..g.order()).collect();
    extend_subtree(g, &s, &all)
}

/// Additive subtree meeting every bag of `td`, with `16ρ·d(T)` slack.
///
/// `td` should already be normalized; the breadth `ρ` is measured here.
pub fn core_subtree(g: &Graph, td: &TreeDecomposition, check: CheckLevel) -> Result<(SubtreeOfGraph, BuildTrace)> {
    let rho = treedec::breadth_bfs(td, g)?;
    core_subtree_with_breadth(g, td, rho, check)
}

fn core_subtree_with_breadth(
    g: &Graph,
    td: &TreeDecomposition,
    rho: u32,
    check: CheckLevel,
) -> Result<(SubtreeOfGraph, BuildTrace)> {
    treedec::ensure_valid(td, g)?;
    let host = td.host();
    let seq = nested_sequence(host)?;
    let d = seq.d;
    let occurrences = td.occurrences();
    let slack_bound = |i: usize| 16 * rho * (d - i) as u32;

    let mut s = seed_subtree(g, td, seq.level(d))?;
    let mut levels = Vec::with_capacity(d + 1);
    levels.push(snapshot(g, td, &occurrences, seq.level(d), d, &s, Vec::new(), slack_bound(d), 0, check)?);
    for i in (1..=d).rev() {
        let lower = seq.level(i - 1);
        let (_, leaves) = branch_and_leaf(host, lower)?;
        let uncovered: Vec<&[usize]> = leaves
            .iter()
            .map(|&t| td.bag(t))
            .filter(|bag| !bag.iter().any(|&v| s.contains(v)))
            .collect();
        let chosen = minimal_hitting_set(&uncovered);
        let (next, scanned) = extend(g, &s, &chosen)?;
        if check == CheckLevel::PerLevel {
            check_extension(g, &s, &chosen, &next).map_err(|e| at_level(e, i - 1))?;
            check_minimal(&uncovered, &chosen).map_err(|what| Error::InvariantViolated { level: i - 1, what })?;
        }
        s = next;
        levels.push(snapshot(g, td, &occurrences, lower, i - 1, &s, chosen, slack_bound(i - 1), scanned, check)?);
    }
    let trace = BuildTrace { rho, d, decomposition_nodes: host.order(), levels };
    Ok((s, trace))
}

fn at_level(e: Error, level: usize) -> Error {
    match e {
        Error::InvariantViolated { what, .. } => Error::InvariantViolated { level, what },
        other => other,
    }
}

/// The starting subtree for the last level `T_d`, a path of at most three
/// nodes: a vertex common to all its bags (smallest id), or, when a
/// three-node path has no common vertex, a shortest path in `G` between the
/// bags of its two ends.
fn seed_subtree(g: &Graph, td: &TreeDecomposition, nodes: &[usize]) -> Result<SubtreeOfGraph> {
    let common = nodes
        .iter()
        .skip(1)
        .fold(td.bag(nodes[0]).to_vec(), |acc, &t| acc.into_iter().filter(|v| td.bag(t).binary_search(v).is_ok()).collect());
    if let Some(&v) = common.first() {
        return SubtreeOfGraph::single(g, v);
    }
    if nodes.len() != 3 {
        return Err(Error::EmptyBagIntersection(nodes.to_vec()));
    }
    let (_, ends) = branch_and_leaf(td.host(), nodes)?;
    let (from, to) = (td.bag(ends[0]), td.bag(ends[1]));
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptyBagIntersection(nodes.to_vec()));
    }
    let mut dist = vec![u32::MAX; g.order()];
    bfs_levels(g, from, &mut dist, &mut VecDeque::new());
    let target = to
        .iter()
        .copied()
        .min_by_key(|&v| (dist[v], v))
        .filter(|&v| dist[v] != u32::MAX)
        .ok_or(Error::Disconnected)?;
    let mut path = vec![target];
    let mut edges = Vec::new();
    let mut v = target;
    while let Some(p) = parent_of(g, &dist, v) {
        edges.push((v, p));
        path.push(p);
        v = p;
    }
    SubtreeOfGraph::new(g, path, edges)
}

/// Inclusion-minimal vertex set meeting every given bag.
///
/// Greedy: for each bag not yet hit (in order) take its vertex lying in the
/// most unhit bags, smallest id on ties. A reverse pass then drops picks
/// whose bags are all hit by other picks.
fn minimal_hitting_set(bags: &[&[usize]]) -> Vec<usize> {
    let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, bag) in bags.iter().enumerate() {
        for &v in bag.iter() {
            occ.entry(v).or_default().push(j);
        }
    }
    let mut hits = vec![0u32; bags.len()];
    let mut picks = Vec::new();
    for (j, bag) in bags.iter().enumerate() {
        if hits[j] > 0 {
            continue;
        }
        let mut best = (0usize, usize::MAX);
        for &v in bag.iter() {
            let gain = occ[&v].iter().filter(|&&b| hits[b] == 0).count();
            if gain > best.0 {
                best = (gain, v);
            }
        }
        let v = best.1;
        for &b in &occ[&v] {
            hits[b] += 1;
        }
        picks.push(v);
    }
    let mut keep = vec![true; picks.len()];
    for (idx, &v) in picks.iter().enumerate().rev() {
        if occ[&v].iter().all(|&b| hits[b] >= 2) {
            keep[idx] = false;
            for &b in &occ[&v] {
                hits[b] -= 1;
            }
        }
    }
    let mut out: Vec<usize> = picks.into_iter().zip(keep).filter_map(|(v, k)| k.then_some(v)).collect();
    out.sort_unstable();
    out
}

fn check_minimal(bags: &[&[usize]], chosen: &[usize]) -> core::result::Result<(), alloc::string::String> {
    let hits = |b: &[usize]| chosen.iter().filter(|v| b.binary_search(v).is_ok()).count();
    if let Some(bag) = bags.iter().find(|b| hits(b) == 0) {
        return Err(format!("hitting set misses bag {bag:?}"));
    }
    for &u in chosen {
        if !bags.iter().any(|b| b.binary_search(&u).is_ok() && hits(b) == 1) {
            return Err(format!("hitting set is not minimal: {u} is redundant"));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn snapshot(
    g: &Graph,
    td: &TreeDecomposition,
    occurrences: &[Vec<usize>],
    nodes: &[usize],
    level: usize,
    s: &SubtreeOfGraph,
    chosen: Vec<usize>,
    slack_bound: u32,
    scanned: u64,
    check: CheckLevel,
) -> Result<LevelSnapshot> {
    let meets_all_bags = nodes.iter().all(|&t| td.bag(t).iter().any(|&v| s.contains(v)));
    let (mut measured_slack, mut leaf_pairs_without_witness) = (None, None);
    if check == CheckLevel::PerLevel {
        if !meets_all_bags {
            return Err(Error::InvariantViolated { level, what: "subtree misses a bag of this level".into() });
        }
        let (slack, witness) = verify::subtree_additive_slack(g, s);
        if slack > slack_bound {
            return Err(Error::InvariantViolated {
                level,
                what: format!("slack {slack} at {}-{} exceeds {slack_bound}", witness.0, witness.1),
            });
        }
        measured_slack = Some(slack);
        leaf_pairs_without_witness = Some(unwitnessed_leaf_pairs(td, occurrences, nodes, s)?);
    }
    Ok(LevelSnapshot {
        level,
        tree_nodes: nodes.len(),
        vertices: s.vertices().to_vec(),
        edge_count: s.edges().len(),
        chosen,
        slack_bound,
        measured_slack,
        meets_all_bags,
        leaf_pairs_without_witness,
        scanned,
    })
}

/// Leaf pairs `u, v` of `s` for which no distinct nodes `a, b` among the
/// branch and leaf nodes of the level have `u ∈ X_a`, `v ∈ X_b`.
fn unwitnessed_leaf_pairs(td: &TreeDecomposition, occurrences: &[Vec<usize>], nodes: &[usize], s: &SubtreeOfGraph) -> Result<usize> {
    let (branch, leaves) = branch_and_leaf(td.host(), nodes)?;
    let mut special = vec![false; td.node_count()];
    for &t in branch.iter().chain(&leaves) {
        special[t] = true;
    }
    let homes: Vec<Vec<usize>> = s
        .leaves()
        .iter()
        .map(|&v| occurrences[v].iter().copied().filter(|&t| special[t]).collect())
        .collect();
    let mut missing = 0;
    for i in 0..homes.len() {
        for j in i + 1..homes.len() {
            let (a, b) = (&homes[i], &homes[j]);
            let ok = !a.is_empty() && !b.is_empty() && !(a.len() == 1 && b.len() == 1 && a[0] == b[0]);
            if !ok {
                missing += 1;
            }
        }
    }
    Ok(missing)
}

/// Additive tree spanner with slack at most `8ρ(2·d(T) + 1)`.
///
/// Normalizes `td`, measures its breadth `ρ`, builds the core subtree and
/// completes it with `ρ' = 2ρ`. The report's bound is `8ρ(2d + 1)`.
pub fn build_spanner(g: &Graph, td: &TreeDecomposition, opts: BuildOptions) -> Result<(SubtreeOfGraph, StretchReport, BuildTrace)> {
    if !graph::is_connected(g)? {
        return Err(Error::Disconnected);
    }
    treedec::ensure_valid(td, g)?;
    let td = treedec::normalize(td);
    let rho = treedec::breadth_bfs(&td, g)?;
    let (core, trace) = core_subtree_with_breadth(g, &td, rho, opts.check)?;
    let d = trace.d as u32;
    let spanner = complete_spanner(g, &core, 16 * rho * d, 2 * rho, opts.check >= CheckLevel::Final)?;
    let report = verify::additive_stretch(g, &spanner, opts.verify)?.with_bound(8 * rho * (2 * d + 1));
    Ok((spanner, report, trace))
}

/// Additive tree spanner from a multiplicative tree `k`-spanner `t`, via
/// the decomposition whose bags are the radius-`⌈k/2⌉` balls of `t`.
///
/// The report's bound is `8⌈k/2⌉(2d + 1)`.
pub fn build_from_multiplicative(
    g: &Graph,
    t: &SubtreeOfGraph,
    k: u32,
    opts: BuildOptions,
) -> Result<(SubtreeOfGraph, StretchReport, BuildTrace)> {
    if k == 0 {
        return Err(Error::ZeroStretch);
    }
    let measured = verify::additive_stretch(g, t, VerifyMode::Exact)?;
    if measured.max_multiplicative > Ratio::new(k, 1) {
        return Err(Error::StretchExceeded { k, measured: measured.max_multiplicative, witness: measured.witness_mult });
    }
    let td = treedec::from_multiplicative_spanner(g, t, k)?;
    let (spanner, report, trace) = build_spanner(g, &td, opts)?;
    let half = k.div_ceil(2);
    if trace.rho > half {
        return Err(Error::InvariantViolated { level: 0, what: format!("breadth {} exceeds {half}", trace.rho) });
    }
    let report = report.with_bound(8 * half * (2 * trace.d as u32 + 1));
    Ok((spanner, report, trace))
}
