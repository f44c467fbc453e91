//! Tree decompositions: validation, breadth, bag-containment normalization
//! and two constructions (from a multiplicative tree spanner, and a BFS
//! layering heuristic).

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{self, bfs_bounded, bfs_levels, DistanceMatrix, Graph, RadiusScratch};
use crate::subtree::SubtreeOfGraph;
use crate::{Error, Result};

/// A host tree (node ids `0..t`) with one bag of graph vertices per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    host: Graph,
    bags: Vec<Vec<usize>>,
    graph_order: usize,
}

/// A broken decomposition axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(tag = "kind", rename_all = "snake_case"))]
pub enum Violation {
    /// The vertex appears in no bag.
    VertexUncovered { vertex: usize },
    /// The nodes whose bags hold the vertex do not form a subtree.
    VertexSubtreeDisconnected { vertex: usize, nodes: Vec<usize> },
    /// No bag holds both endpoints; lists the nodes holding each endpoint.
    EdgeUncovered {
        u: usize,
        v: usize,
        nodes_u: Vec<usize>,
        nodes_v: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::VertexSubtreeDisconnected { vertex, nodes } => {
                write!(f, "nodes {nodes:?} holding vertex {vertex} are not connected")
            }
            Violation::EdgeUncovered { u, v, nodes_u, nodes_v } => {
                write!(f, "edge {u}{v} uncovered (nodes {nodes_u:?} vs {nodes_v:?})")
            }
        }
    }
}

impl TreeDecomposition {
    /// Checks the host is a tree with one bag per node and that bag
    /// entries are below `graph_order`. Bags are sorted and deduplicated.
    pub fn new(host: Graph, bags: Vec<Vec<usize>>, graph_order: usize) -> Result<Self> {
        if !host.is_tree() {
            return Err(Error::NotATree);
        }
        if bags.len() != host.order() {
            return Err(Error::BagCountMismatch { bags: bags.len(), nodes: host.order() });
        }
        let mut bags = bags;
        for (node, bag) in bags.iter_mut().enumerate() {
            bag.sort_unstable();
            bag.dedup();
            if let Some(&vertex) = bag.iter().find(|&&v| v >= graph_order) {
                return Err(Error::BagVertexOutOfRange { node, vertex, order: graph_order });
            }
        }
        if host.order() == 1 && bags[0].is_empty() {
            return Err(Error::EmptyBag(0));
        }
        Ok(TreeDecomposition { host, bags, graph_order })
    }

    /// One node whose bag is every vertex.
    pub fn trivial(graph_order: usize) -> Result<Self> {
        Self::new(Graph::empty(1), vec![(0..graph_order).collect()], graph_order)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[usize] {
        &self.bags[node]
    }

    pub fn graph_order(&self) -> usize {
        self.graph_order
    }

    pub fn node_count(&self) -> usize {
        self.host.order()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// For every graph vertex, the sorted list of nodes whose bag holds it.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.graph_order];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                occ[v].push(node);
            }
        }
        occ
    }
}

/// Lists every violated decomposition axiom; empty iff `td` decomposes `g`.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> Result<Vec<Violation>> {
    if td.graph_order != g.order() {
        return Err(Error::OrderMismatch { decomposition: td.graph_order, graph: g.order() });
    }
    let occ = td.occurrences();
    // induced edges of each vertex's node set, counted over host edges
    let mut induced = vec![0usize; g.order()];
    for (s, t) in td.host.edges() {
        for_each_common(&td.bags[s], &td.bags[t], |v| induced[v] += 1);
    }
    let mut out = Vec::new();
    for (vertex, nodes) in occ.iter().enumerate() {
        if nodes.is_empty() {
            out.push(Violation::VertexUncovered { vertex });
        } else if induced[vertex] + 1 != nodes.len() {
            out.push(Violation::VertexSubtreeDisconnected { vertex, nodes: nodes.clone() });
        }
    }
    for (u, v) in g.edges() {
        let mut shared = false;
        for_each_common(&occ[u], &occ[v], |_| shared = true);
        if !shared {
            out.push(Violation::EdgeUncovered {
                u,
                v,
                nodes_u: occ[u].clone(),
                nodes_v: occ[v].clone(),
            });
        }
    }
    Ok(out)
}

pub(crate) fn ensure_valid(td: &TreeDecomposition, g: &Graph) -> Result<()> {
    let violations = validate(td, g)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDecomposition(violations))
    }
}

/// Maximum bag radius `max_t rad_G(X_t)` using a precomputed distance table.
pub fn breadth(td: &TreeDecomposition, g: &Graph, dm: &DistanceMatrix) -> Result<u32> {
    ensure_valid(td, g)?;
    let mut best = 0;
    for bag in td.bags.iter().filter(|b| !b.is_empty()) {
        best = best.max(graph::radius_of_set(g, dm, bag)?);
    }
    Ok(best)
}

/// [`breadth`] computed with BFS runs instead of an `n × n` table.
pub fn breadth_bfs(td: &TreeDecomposition, g: &Graph) -> Result<u32> {
    ensure_valid(td, g)?;
    let mut scratch = RadiusScratch::new(g.order());
    let mut best = 0;
    for bag in td.bags.iter().filter(|b| !b.is_empty()) {
        best = best.max(scratch.radius(g, bag)?);
    }
    Ok(best)
}

/// Contracts host edges `st` with `X_s ⊆ X_t` (keeping `t`) until none is
/// left, always taking the lexicographically smallest contractible edge.
/// Surviving nodes keep their relative order.
pub fn normalize(td: &TreeDecomposition) -> TreeDecomposition {
    let t = td.host.order();
    let mut adj: Vec<BTreeSet<usize>> = (0..t).map(|s| td.host.neighbors(s).iter().copied().collect()).collect();
    let mut alive = vec![true; t];
    // (s, t) with s < t; the value says which endpoint is discarded
    let discard = |a: usize, b: usize| -> Option<usize> {
        if is_subset(&td.bags[a], &td.bags[b]) {
            Some(a)
        } else if is_subset(&td.bags[b], &td.bags[a]) {
            Some(b)
        } else {
            None
        }
    };
    let mut candidates: BTreeSet<(usize, usize)> =
        td.host.edges().filter(|&(a, b)| discard(a, b).is_some()).collect();
    while let Some((a, b)) = candidates.pop_first() {
        let gone = discard(a, b).expect("candidate edges are contractible");
        let keep = if gone == a { b } else { a };
        alive[gone] = false;
        let moved: Vec<usize> = core::mem::take(&mut adj[gone]).into_iter().collect();
        for &w in &moved {
            adj[w].remove(&gone);
            candidates.remove(&(w.min(gone), w.max(gone)));
        }
        for &w in moved.iter().filter(|&&w| w != keep) {
            adj[w].insert(keep);
            adj[keep].insert(w);
            let e = (w.min(keep), w.max(keep));
            if discard(e.0, e.1).is_some() {
                candidates.insert(e);
            }
        }
    }
    let mut new_id = vec![usize::MAX; t];
    let mut bags = Vec::new();
    for s in (0..t).filter(|&s| alive[s]) {
        new_id[s] = bags.len();
        bags.push(td.bags[s].clone());
    }
    let edges = (0..t)
        .filter(|&s| alive[s])
        .flat_map(|s| adj[s].iter().filter(move |&&w| s < w).map(move |&w| (s, w)))
        .map(|(s, w)| (new_id[s], new_id[w]))
        .collect::<Vec<_>>();
    let host = Graph::new(bags.len(), edges).expect("contraction keeps a simple tree");
    let out = TreeDecomposition { host, bags, graph_order: td.graph_order };
    debug_assert!(out.host.is_tree());
    out
}

/// Decomposition whose host tree is the spanning tree `t` itself, with
/// `X_u` = all vertices within `⌈k/2⌉` of `u` in `t`. When `t` is a
/// multiplicative tree `k`-spanner the breadth is at most `⌈k/2⌉`.
///
/// Bags come from BFS in `t` (not in `g`), so the cost is the total bag size.
pub fn from_multiplicative_spanner(g: &Graph, t: &SubtreeOfGraph, k: u32) -> Result<TreeDecomposition> {
    if k == 0 {
        return Err(Error::ZeroStretch);
    }
    if !crate::verify::is_spanning_tree(g, t) {
        return Err(Error::NotSpanningTree);
    }
    let tg = t.to_graph();
    let reach = k.div_ceil(2);
    let n = g.order();
    let mut dist = vec![u32::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut bags = Vec::with_capacity(n);
    for u in 0..n {
        touched.clear();
        bfs_bounded(&tg, u, reach, &mut dist, &mut touched, &mut queue);
        let mut bag = touched.clone();
        bag.sort_unstable();
        for &v in &touched {
            dist[v] = u32::MAX;
        }
        bags.push(bag);
    }
    TreeDecomposition::new(tg, bags, n)
}

/// BFS layering decomposition rooted at vertex 0.
///
/// Each host node is a cluster of one BFS layer: vertices of layer `i`
/// joined by paths through layers `≥ i`. The bag of a cluster is the
/// cluster plus all its neighbors in layer `i - 1`; the parent node is the
/// cluster holding those neighbors. No breadth guarantee.
pub fn heuristic_layering_decomposition(g: &Graph) -> Result<TreeDecomposition> {
    if !graph::is_connected(g)? {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let mut dist = vec![u32::MAX; n];
    bfs_levels(g, &[0], &mut dist, &mut VecDeque::new());
    let depth = dist.iter().copied().max().unwrap_or(0) as usize;
    let mut layers = vec![Vec::new(); depth + 1];
    for v in 0..n {
        layers[dist[v] as usize].push(v);
    }

    let mut dsu = Dsu::new(n);
    // clusters per layer as (smallest member, members)
    let mut per_layer: Vec<Vec<Vec<usize>>> = vec![Vec::new(); depth + 1];
    let mut slot = vec![usize::MAX; n];
    for i in (0..=depth).rev() {
        for &v in &layers[i] {
            for &w in g.neighbors(v) {
                if dist[w] as usize >= i {
                    dsu.union(v, w);
                }
            }
        }
        let clusters = &mut per_layer[i];
        for &v in &layers[i] {
            let r = dsu.find(v);
            if slot[r] == usize::MAX {
                slot[r] = clusters.len();
                clusters.push(Vec::new());
            }
            clusters[slot[r]].push(v);
        }
        for &v in &layers[i] {
            slot[dsu.find(v)] = usize::MAX;
        }
        clusters.sort_unstable_by_key(|c| c[0]);
    }

    let mut node_of = vec![usize::MAX; n];
    let mut bags = Vec::new();
    let mut members = Vec::new();
    for (i, clusters) in per_layer.iter().enumerate() {
        for c in clusters {
            for &v in c {
                node_of[v] = members.len();
            }
            let mut bag = c.clone();
            if i > 0 {
                for &v in c {
                    bag.extend(g.neighbors(v).iter().copied().filter(|&w| dist[w] as usize == i - 1));
                }
            }
            bag.sort_unstable();
            bag.dedup();
            bags.push(bag);
            members.push(c[0]);
        }
    }
    let mut edges = Vec::new();
    for (node, &rep) in members.iter().enumerate().skip(1) {
        let parent = graph::parent_of(g, &dist, rep).expect("non-root clusters have a parent layer");
        edges.push((node_of[parent], node));
    }
    let host = Graph::new(bags.len(), edges)?;
    TreeDecomposition::new(host, bags, n)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn for_each_common(a: &[usize], b: &[usize], mut f: impl FnMut(usize)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}
