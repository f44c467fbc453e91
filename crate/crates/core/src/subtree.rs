//! Subtrees of a host graph: the objects grown into a spanner.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

/// A subgraph of a host graph that is a tree.
///
/// Vertices are kept sorted, edges as sorted `(u, v)` pairs with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeOfGraph {
    host_order: usize,
    member: Vec<bool>,
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl SubtreeOfGraph {
    /// Validates that `(vertices, edges)` is a tree inside `g`.
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = usize>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = g.order();
        let mut member = vec![false; n];
        let mut verts = Vec::new();
        for v in vertices {
            g.check_vertex(v)?;
            if !member[v] {
                member[v] = true;
                verts.push(v);
            }
        }
        if verts.is_empty() {
            return Err(Error::InvalidSubtree("no vertices".into()));
        }
        verts.sort_unstable();
        let mut es: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        es.sort_unstable();
        es.dedup();
        for &(u, v) in &es {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidSubtree(format!("{u}-{v} is not an edge of the graph")));
            }
            if !member[u] || !member[v] {
                return Err(Error::InvalidSubtree(format!("edge {u}-{v} leaves the vertex set")));
            }
        }
        let s = SubtreeOfGraph { host_order: n, member, vertices: verts, edges: es };
        if s.edges.len() + 1 != s.vertices.len() || !s.is_connected() {
            return Err(Error::InvalidSubtree("not connected and acyclic".into()));
        }
        Ok(s)
    }

    pub fn single(g: &Graph, v: usize) -> Result<Self> {
        g.check_vertex(v)?;
        let mut member = vec![false; g.order()];
        member[v] = true;
        Ok(SubtreeOfGraph { host_order: g.order(), member, vertices: vec![v], edges: Vec::new() })
    }

    /// The whole of `g`, which must itself be a tree.
    pub fn from_tree_graph(g: &Graph) -> Result<Self> {
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        Ok(SubtreeOfGraph {
            host_order: g.order(),
            member: vec![true; g.order()],
            vertices: (0..g.order()).collect(),
            edges: g.edges().collect(),
        })
    }

    /// Assembles a subtree from parts already known to be consistent.
    pub(crate) fn from_parts(host_order: usize, member: Vec<bool>, mut edges: Vec<(usize, usize)>) -> Self {
        let vertices = (0..host_order).filter(|&v| member[v]).collect();
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        SubtreeOfGraph { host_order, member, vertices, edges }
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.host_order && self.member[v]
    }

    pub(crate) fn membership(&self) -> &[bool] {
        &self.member
    }

    pub fn is_spanning(&self) -> bool {
        self.vertices.len() == self.host_order
    }

    /// The subtree as a graph on all host vertices (non-members isolated).
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.host_order, self.edges.iter().copied()).expect("subtree edges are simple")
    }

    /// Per-vertex degree inside the subtree.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.host_order];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// `L(S)`: vertices of degree at most one; a single vertex is its own leaf.
    pub fn leaves(&self) -> Vec<usize> {
        let deg = self.degrees();
        self.vertices.iter().copied().filter(|&v| deg[v] <= 1).collect()
    }

    fn is_connected(&self) -> bool {
        let g = self.to_graph();
        let mut seen = vec![false; self.host_order];
        let start = self.vertices[0];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Classic;

    #[test]
    fn validates_tree_shape() {
        let g = Classic::Cycle(4).build().unwrap();
        assert!(SubtreeOfGraph::new(&g, [0, 1, 2], [(0, 1), (1, 2)]).is_ok());
        // cycle
        assert!(SubtreeOfGraph::new(&g, [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (0, 3)]).is_err());
        // not an edge of C_4
        assert!(SubtreeOfGraph::new(&g, [0, 2], [(0, 2)]).is_err());
        // disconnected
        assert!(SubtreeOfGraph::new(&g, [0, 2], []).is_err());
    }

    #[test]
    fn leaves_of_single_vertex_and_path() {
        let g = Classic::Path(4).build().unwrap();
        let s = SubtreeOfGraph::single(&g, 2).unwrap();
        assert_eq!(s.leaves(), [2]);
        let p = SubtreeOfGraph::from_tree_graph(&g).unwrap();
        assert_eq!(p.leaves(), [0, 3]);
        assert!(p.is_spanning());
    }
}
