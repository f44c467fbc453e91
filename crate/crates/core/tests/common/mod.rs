#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use tbspan_core::{Graph, SubtreeOfGraph};

/// Random subtree of `g` with `size` vertices, grown from `root` by adding
/// uniformly chosen boundary edges.
pub fn random_subtree(g: &Graph, root: usize, size: usize, rng: &mut impl Rng) -> SubtreeOfGraph {
    let mut inside = vec![false; g.order()];
    inside[root] = true;
    let mut vertices = vec![root];
    let mut edges = Vec::new();
    while vertices.len() < size {
        let boundary: Vec<(usize, usize)> = vertices
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().map(move |&w| (u, w)))
            .filter(|&(_, w)| !inside[w])
            .collect();
        let Some(&(u, w)) = boundary.choose(rng) else { break };
        inside[w] = true;
        vertices.push(w);
        edges.push((u, w));
    }
    SubtreeOfGraph::new(g, vertices, edges).unwrap()
}

/// Random spanning tree: Kruskal over a shuffled edge list.
pub fn random_spanning_tree(g: &Graph, rng: &mut impl Rng) -> SubtreeOfGraph {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(rng);
    let mut dsu: Vec<usize> = (0..g.order()).collect();
    fn find(d: &mut [usize], mut v: usize) -> usize {
        while d[v] != v {
            d[v] = d[d[v]];
            v = d[v];
        }
        v
    }
    let mut chosen = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a != b {
            dsu[a] = b;
            chosen.push((u, v));
        }
    }
    SubtreeOfGraph::new(g, 0..g.order(), chosen).unwrap()
}

/// Floyd-Warshall, `u32::MAX` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut d = vec![vec![u32::MAX; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == u32::MAX {
                continue;
            }
            for j in 0..n {
                if d[k][j] != u32::MAX && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// One representative of every unlabeled tree on `1..=max` vertices,
/// grouped by order.
pub fn unlabeled_trees(max: usize) -> BTreeMap<usize, Vec<Graph>> {
    let mut out = BTreeMap::new();
    let mut current: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for n in 1..=max {
        out.insert(n, current.iter().map(|e| Graph::new(n, e.iter().copied()).unwrap()).collect());
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for edges in &current {
            for v in 0..n {
                let mut grown = edges.clone();
                grown.push((v, n));
                let g = Graph::new(n + 1, grown.iter().copied()).unwrap();
                if seen.insert(canonical_form(&g)) {
                    next.push(grown);
                }
            }
        }
        current = next;
    }
    out
}

/// AHU encoding rooted at the center(s); isomorphic trees get equal strings.
pub fn canonical_form(t: &Graph) -> String {
    let n = t.order();
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| encode(t, c, usize::MAX)).min().unwrap()
}

fn encode(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| encode(t, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}
