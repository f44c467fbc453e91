//! Undirected simple graphs, breadth first search and exact hop distances.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const UNREACHED: u32 = u32::MAX;

/// Undirected simple graph on the vertices `0..n`.
///
/// Neighbor lists are sorted ascending, which the BFS tie-break relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `true` iff the graph is connected and has exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.m + 1 == self.order() && is_connected(self).unwrap_or(false)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order() })
        }
    }
}

/// Result of a (multi-source) breadth first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bfs {
    /// Hop distance to the nearest source, `None` if unreachable.
    pub dist: Vec<Option<u32>>,
    /// Smallest-id neighbor one level closer to the sources.
    pub parent: Vec<Option<usize>>,
}

/// Multi-source BFS. Parent edges form a forest rooted in `sources`.
pub fn bfs(g: &Graph, sources: &[usize]) -> Result<Bfs> {
    if sources.is_empty() {
        return Err(Error::EmptySourceSet);
    }
    for &s in sources {
        g.check_vertex(s)?;
    }
    let mut raw = vec![UNREACHED; g.order()];
    let mut queue = VecDeque::new();
    bfs_levels(g, sources, &mut raw, &mut queue);
    let parent = (0..g.order())
        .map(|v| parent_of(g, &raw, v))
        .collect();
    let dist = raw.iter().map(|&d| (d != UNREACHED).then_some(d)).collect();
    Ok(Bfs { dist, parent })
}

/// Fills `dist` with hop distances from `sources`; `dist` must be all
/// `u32::MAX` on entry.
pub(crate) fn bfs_levels(g: &Graph, sources: &[usize], dist: &mut [u32], queue: &mut VecDeque<usize>) {
    queue.clear();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// BFS that stops expanding past `limit` hops. Vertices beyond stay at `u32::MAX`.
pub(crate) fn bfs_bounded(
    g: &Graph,
    source: usize,
    limit: u32,
    dist: &mut [u32],
    touched: &mut Vec<usize>,
    queue: &mut VecDeque<usize>,
) {
    queue.clear();
    dist[source] = 0;
    touched.push(source);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        if dist[u] == limit {
            continue;
        }
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                touched.push(w);
                queue.push_back(w);
            }
        }
    }
}

#[inline]
pub(crate) fn parent_of(g: &Graph, dist: &[u32], v: usize) -> Option<usize> {
    let d = dist[v];
    if d == 0 || d == UNREACHED {
        return None;
    }
    // neighbor lists are sorted, so the first hit is the smallest id
    g.neighbors(v).iter().copied().find(|&w| dist[w] == d - 1)
}

/// Dense `n × n` hop-distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Distance between `u` and `v`, `None` if they are disconnected.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.dist[u * self.n + v];
        (d != UNREACHED).then_some(d)
    }

    pub(crate) fn row_raw(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHED)
    }
}

/// All-pairs shortest paths by one BFS per vertex.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut dist = vec![UNREACHED; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for u in 0..n {
        bfs_levels(g, &[u], &mut dist[u * n..(u + 1) * n], &mut queue);
    }
    DistanceMatrix { n, dist }
}

pub fn is_connected(g: &Graph) -> Result<bool> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut dist = vec![UNREACHED; g.order()];
    bfs_levels(g, &[0], &mut dist, &mut VecDeque::new());
    Ok(dist.iter().all(|&d| d != UNREACHED))
}

/// `rad_G(U)`: the smallest `r` such that some vertex of `G` (not
/// necessarily in `U`) is within `r` hops of every vertex of `U`.
pub fn radius_of_set(g: &Graph, dm: &DistanceMatrix, set: &[usize]) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &v in set {
        g.check_vertex(v)?;
    }
    let n = g.order();
    let mut ecc = vec![0u32; n];
    for &v in set {
        for (e, &d) in ecc.iter_mut().zip(dm.row_raw(v)) {
            *e = (*e).max(d);
        }
    }
    match ecc.into_iter().min() {
        Some(r) if r != UNREACHED => Ok(r),
        _ => Err(Error::Disconnected),
    }
}

/// Same value as [`radius_of_set`] without a distance matrix.
///
/// Brackets the radius between half the set's (double-sweep) diameter and
/// the eccentricity of a midpoint candidate, then settles the remaining gap
/// with BFS runs truncated at the upper bound.
pub fn radius_of_set_bfs(g: &Graph, set: &[usize]) -> Result<u32> {
    let mut scratch = RadiusScratch::new(g.order());
    scratch.radius(g, set)
}

pub(crate) struct RadiusScratch {
    a: Vec<u32>,
    b: Vec<u32>,
    ecc: Vec<u32>,
    hits: Vec<u32>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl RadiusScratch {
    pub(crate) fn new(n: usize) -> Self {
        RadiusScratch {
            a: vec![UNREACHED; n],
            b: vec![UNREACHED; n],
            ecc: vec![0; n],
            hits: vec![0; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    pub(crate) fn radius(&mut self, g: &Graph, set: &[usize]) -> Result<u32> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in set {
            g.check_vertex(v)?;
        }
        if set.len() == 1 {
            return Ok(0);
        }
        let far_in_set = |dist: &[u32]| -> Result<(usize, u32)> {
            let mut best = (set[0], 0);
            for &v in set {
                if dist[v] == UNREACHED {
                    return Err(Error::Disconnected);
                }
                if dist[v] > best.1 {
                    best = (v, dist[v]);
                }
            }
            Ok(best)
        };

        // double sweep: v1 far from set[0], v2 far from v1
        self.a.fill(UNREACHED);
        bfs_levels(g, &[set[0]], &mut self.a, &mut self.queue);
        let (v1, _) = far_in_set(&self.a)?;
        self.a.fill(UNREACHED);
        bfs_levels(g, &[v1], &mut self.a, &mut self.queue);
        let (v2, span) = far_in_set(&self.a)?;
        self.b.fill(UNREACHED);
        bfs_levels(g, &[v2], &mut self.b, &mut self.queue);
        let lower = span.div_ceil(2);
        let center = (0..g.order())
            .min_by_key(|&c| self.a[c].max(self.b[c]))
            .expect("non-empty graph");
        self.a.fill(UNREACHED);
        bfs_levels(g, &[center], &mut self.a, &mut self.queue);
        let (_, upper) = far_in_set(&self.a)?;
        if upper == lower {
            return Ok(upper);
        }

        // exact: a center must lie within `upper` of every set vertex
        self.b.fill(UNREACHED);
        self.ecc.fill(0);
        self.hits.fill(0);
        for &v in set {
            self.touched.clear();
            bfs_bounded(g, v, upper, &mut self.b, &mut self.touched, &mut self.queue);
            for &c in &self.touched {
                self.hits[c] += 1;
                self.ecc[c] = self.ecc[c].max(self.b[c]);
                self.b[c] = UNREACHED;
            }
        }
        let k = set.len() as u32;
        let best = (0..g.order())
            .filter(|&c| self.hits[c] == k)
            .map(|c| self.ecc[c])
            .min()
            .unwrap_or(upper);
        Ok(best.min(upper))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Classic;

    fn path(n: usize) -> Graph {
        Classic::Path(n).build().unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Classic::Cycle(n).build().unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(2, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, order: 2 })
        );
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::new(4, [(0, 1), (2, 1), (3, 0)]).unwrap();
        for u in 0..4 {
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
            }
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn bfs_on_path() {
        let r = bfs(&path(3), &[0]).unwrap();
        assert_eq!(r.dist, [Some(0), Some(1), Some(2)]);
        assert_eq!(r.parent, [None, Some(0), Some(1)]);
    }

    #[test]
    fn bfs_all_sources() {
        let g = cycle(5);
        let r = bfs(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert!(r.dist.iter().all(|&d| d == Some(0)));
        assert!(r.parent.iter().all(Option::is_none));
    }

    #[test]
    fn bfs_two_sources_on_c6_matches_apsp() {
        let g = cycle(6);
        let r = bfs(&g, &[0, 3]).unwrap();
        let dm = apsp(&g);
        for v in 0..6 {
            let expect = dm.get(0, v).unwrap().min(dm.get(3, v).unwrap());
            assert_eq!(r.dist[v], Some(expect));
        }
        assert_eq!(r.dist, [0, 1, 1, 0, 1, 1].map(Some));
        // vertex 2 is adjacent to 1 and 3 (level 0): parent is 3
        assert_eq!(r.parent[2], Some(3));
        assert_eq!(r.parent[5], Some(0));
    }

    #[test]
    fn bfs_errors() {
        let g = path(3);
        assert_eq!(bfs(&g, &[]), Err(Error::EmptySourceSet));
        assert_eq!(bfs(&g, &[3]), Err(Error::VertexOutOfRange { vertex: 3, order: 3 }));
    }

    #[test]
    fn apsp_small_cases() {
        let k4 = Classic::Complete(4).build().unwrap();
        let dm = apsp(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(dm.get(u, v), Some(u32::from(u != v)));
            }
        }
        assert_eq!(apsp(&path(4)).get(0, 3), Some(3));
        let two = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(apsp(&two).get(0, 2), None);
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&cycle(3)).unwrap());
        assert!(!is_connected(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()).unwrap());
        assert_eq!(is_connected(&Graph::empty(0)), Err(Error::EmptyGraph));
        assert!(is_connected(&crate::generators::snowflake(3).unwrap()).unwrap());
    }

    #[test]
    fn radius_examples() {
        let g = cycle(6);
        let dm = apsp(&g);
        assert_eq!(radius_of_set(&g, &dm, &[4]), Ok(0));
        assert_eq!(radius_of_set(&g, &dm, &[0, 2, 4]), Ok(2));
        assert_eq!(radius_of_set_bfs(&g, &[0, 2, 4]), Ok(2));
        assert_eq!(radius_of_set(&g, &dm, &[]), Err(Error::EmptySet));
        let t = cycle(3);
        assert_eq!(radius_of_set(&t, &apsp(&t), &[0, 1, 2]), Ok(1));
    }

    #[test]
    fn radius_center_outside_the_set() {
        // star: the leaves have radius 1 through the center, which is not in the set
        let g = Classic::Star(4).build().unwrap();
        let dm = apsp(&g);
        assert_eq!(radius_of_set(&g, &dm, &[1, 2, 3, 4]), Ok(1));
        assert_eq!(radius_of_set_bfs(&g, &[1, 2, 3, 4]), Ok(1));
    }

    #[test]
    fn radius_of_whole_path_and_cycle() {
        for n in 1..12 {
            let g = path(n);
            let all: Vec<usize> = (0..n).collect();
            let expect = (n as u32 - 1).div_ceil(2);
            assert_eq!(radius_of_set(&g, &apsp(&g), &all), Ok(expect), "P_{n}");
            assert_eq!(radius_of_set_bfs(&g, &all), Ok(expect), "P_{n}");
        }
        for n in 3..12 {
            let g = cycle(n);
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(radius_of_set_bfs(&g, &all), Ok(n as u32 / 2), "C_{n}");
        }
    }
}
