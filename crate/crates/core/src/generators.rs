//! Instance factories: the snowflake lower-bound family with its
//! triangle decomposition, classic graphs, and seeded random trees and
//! connected graphs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::treedec::TreeDecomposition;
use crate::{Error, Result};

/// Snowflake graph `G_k` together with its triangle decomposition.
///
/// `G_1` is a triangle; `G_{k+1}` adds, for every edge `uv` of `G_k` with
/// an endpoint of degree 2, a new vertex adjacent to `u` and `v`. Vertices
/// are numbered generation by generation, new vertices in edge-scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Snowflake {
    k: u32,
}

impl Snowflake {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("snowflake index must be at least 1".into()));
        }
        if k > 24 {
            return Err(Error::InvalidParameter(format!("snowflake index {k} is too large")));
        }
        Ok(Snowflake { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `3 · 2^(k-1)`.
    pub fn order(&self) -> usize {
        3 << (self.k - 1)
    }

    pub fn build(&self) -> (Graph, TreeDecomposition) {
        let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
        // triangle node owning each edge
        let mut owner: Vec<usize> = vec![0; 3];
        let mut bags = vec![vec![0, 1, 2]];
        let mut host_edges = Vec::new();
        let mut n = 3;
        for _ in 1..self.k {
            let mut deg = vec![0usize; n];
            for &(u, v) in &edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            let current = edges.len();
            for e in 0..current {
                let (u, v) = edges[e];
                if deg[u] != 2 && deg[v] != 2 {
                    continue;
                }
                let w = n;
                n += 1;
                let node = bags.len();
                bags.push(vec![u, v, w]);
                host_edges.push((owner[e], node));
                edges.push((u, w));
                edges.push((v, w));
                owner.push(node);
                owner.push(node);
            }
        }
        let g = Graph::new(n, edges.iter().copied()).expect("snowflake edges are simple");
        let host = Graph::new(bags.len(), host_edges).expect("triangle hierarchy is a tree");
        let td = TreeDecomposition::new(host, bags, n).expect("triangle hierarchy is a tree");
        (g, td)
    }
}

pub fn snowflake(k: u32) -> Result<Graph> {
    Ok(Snowflake::new(k)?.build().0)
}

/// Breadth-1 decomposition of `G_k`: one bag per triangle created, joined
/// along the edge each triangle was attached to.
pub fn snowflake_decomposition(k: u32) -> Result<TreeDecomposition> {
    Ok(Snowflake::new(k)?.build().1)
}

/// Classic deterministic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classic {
    Path(usize),
    Cycle(usize),
    /// Center 0 with the given number of leaves.
    Star(usize),
    Complete(usize),
    /// Rows and columns; vertex `r * cols + c`.
    Grid(usize, usize),
    /// Heap layout: children of `i` are `2i + 1` and `2i + 2`.
    CompleteBinaryTree(u32),
}

impl Classic {
    pub fn build(self) -> Result<Graph> {
        let bad = |what: &str| Err(Error::InvalidParameter(format!("{what}: {self:?}")));
        match self {
            Classic::Path(n) => {
                if n == 0 {
                    return bad("path needs a vertex");
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Classic::Cycle(n) => {
                if n < 3 {
                    return bad("cycle needs three vertices");
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Classic::Star(leaves) => {
                if leaves == 0 {
                    return bad("star needs a leaf");
                }
                Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))
            }
            Classic::Complete(n) => {
                if n == 0 {
                    return bad("complete graph needs a vertex");
                }
                Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Classic::Grid(rows, cols) => {
                if rows == 0 || cols == 0 {
                    return bad("grid needs positive sides");
                }
                let id = |r: usize, c: usize| r * cols + c;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                Graph::new(rows * cols, edges)
            }
            Classic::CompleteBinaryTree(depth) => {
                if depth > 24 {
                    return bad("binary tree too deep");
                }
                let n = (1usize << (depth + 1)) - 1;
                Graph::new(n, (1..n).map(|i| ((i - 1) / 2, i)))
            }
        }
    }
}

/// Decodes a Prüfer sequence (entries `< n`, length `n - 2`) into a tree.
pub fn tree_from_prufer(seq: &[usize], n: usize) -> Result<Graph> {
    if n < 2 {
        return if seq.is_empty() && n == 1 {
            Ok(Graph::empty(1))
        } else {
            Err(Error::InvalidParameter(format!("no Prüfer sequence for order {n}")))
        };
    }
    if seq.len() != n - 2 {
        return Err(Error::InvalidParameter(format!("Prüfer sequence for order {n} needs {} entries", n - 2)));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, order: n });
        }
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has a leaf");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges)
}

/// Uniformly random labeled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("random tree needs a vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(&seq, n)
}

/// Random spanning tree plus `m - (n - 1)` random extra edges.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if n == 0 || m + 1 < n || m > max {
        return Err(Error::InvalidParameter(format!("no connected simple graph with n={n}, m={m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let tree = tree_from_prufer(&seq, n)?;
    let mut edges: BTreeSet<(usize, usize)> = tree.edges().collect();
    let extra = m - edges.len();
    if extra * 2 > max - edges.len() {
        // dense: draw from the explicit list of non-edges
        let mut pool: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !edges.contains(e))
            .collect();
        pool.shuffle(&mut rng);
        edges.extend(pool.into_iter().take(extra));
    } else {
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    Graph::new(n, edges)
}
