//! Stretch measurement and brute-force oracles.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{apsp, bfs_levels, Graph};
use crate::subtree::SubtreeOfGraph;
use crate::{Error, Result};

/// Non-negative fraction kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn ceil(self) -> u32 {
        self.num.div_ceil(self.den)
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (u64::from(self.num) * u64::from(other.den)).cmp(&(u64::from(other.num) * u64::from(self.den)))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(tag = "kind", rename_all = "snake_case"))]
pub enum VerifyMode {
    /// Every vertex pair.
    Exact,
    /// `pairs` random pairs drawn from a generator seeded with `seed`;
    /// the reported maximum is a lower bound on the exact one.
    Sampled { seed: u64, pairs: usize },
}

/// Additive and multiplicative stretch of a spanning tree against its
/// host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StretchReport {
    pub max_additive: u32,
    pub max_multiplicative: Ratio,
    pub witness_add: (usize, usize),
    pub witness_mult: (usize, usize),
    pub bound_checked: Option<u32>,
    pub bound_holds: Option<bool>,
    pub pairs_checked: u64,
    pub mode: VerifyMode,
}

impl StretchReport {
    /// Records `bound` and whether the measured maximum respects it.
    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound_checked = Some(bound);
        self.bound_holds = Some(self.max_additive <= bound);
        self
    }
}

struct Accumulator {
    add: (u32, (usize, usize)),
    mult: (Ratio, (usize, usize)),
    pairs: u64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { add: (0, (0, 0)), mult: (Ratio::ONE, (0, 0)), pairs: 0 }
    }

    #[inline]
    fn record(&mut self, u: usize, v: usize, in_graph: u32, in_tree: u32) {
        assert!(in_tree >= in_graph, "subgraph distance {in_tree} below graph distance {in_graph} for {u}-{v}");
        self.pairs += 1;
        let slack = in_tree - in_graph;
        let pair = (u.min(v), u.max(v));
        if slack > self.add.0 || (slack == self.add.0 && self.add.0 > 0 && pair < self.add.1) {
            self.add = (slack, pair);
        }
        if in_graph > 0 {
            let r = Ratio::new(in_tree, in_graph);
            if r > self.mult.0 || (r == self.mult.0 && r > Ratio::ONE && pair < self.mult.1) {
                self.mult = (r, pair);
            }
        }
    }

    fn finish(self, mode: VerifyMode) -> StretchReport {
        StretchReport {
            max_additive: self.add.0,
            max_multiplicative: self.mult.0,
            witness_add: self.add.1,
            witness_mult: self.mult.1,
            bound_checked: None,
            bound_holds: None,
            pairs_checked: self.pairs,
            mode,
        }
    }
}

/// Largest `d_T(u, v) - d_G(u, v)` over all (or sampled) pairs.
pub fn additive_stretch(g: &Graph, t: &SubtreeOfGraph, mode: VerifyMode) -> Result<StretchReport> {
    if !is_spanning_tree(g, t) {
        return Err(Error::NotSpanningTree);
    }
    let n = g.order();
    let tg = t.to_graph();
    let mut acc = Accumulator::new();
    let mut dg = vec![u32::MAX; n];
    let mut dt = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut sweep = |u: usize, dg: &mut [u32], dt: &mut [u32]| {
        dg.fill(u32::MAX);
        dt.fill(u32::MAX);
        bfs_levels(g, &[u], dg, &mut queue);
        bfs_levels(&tg, &[u], dt, &mut queue);
    };
    match mode {
        VerifyMode::Exact => {
            for u in 0..n {
                sweep(u, &mut dg, &mut dt);
                for v in u + 1..n {
                    acc.record(u, v, dg[v], dt[v]);
                }
            }
        }
        VerifyMode::Sampled { seed, pairs } => {
            if n >= 2 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut drawn: Vec<(usize, usize)> = (0..pairs)
                    .map(|_| {
                        let u = rng.gen_range(0..n);
                        let mut v = rng.gen_range(0..n - 1);
                        if v >= u {
                            v += 1;
                        }
                        (u, v)
                    })
                    .collect();
                drawn.sort_unstable();
                let mut last = usize::MAX;
                for (u, v) in drawn {
                    if u != last {
                        sweep(u, &mut dg, &mut dt);
                        last = u;
                    }
                    acc.record(u, v, dg[v], dt[v]);
                }
            }
        }
    }
    Ok(acc.finish(mode))
}

/// Largest `d_T(u, v) / d_G(u, v)` over all pairs.
pub fn multiplicative_stretch(g: &Graph, t: &SubtreeOfGraph) -> Result<Ratio> {
    Ok(additive_stretch(g, t, VerifyMode::Exact)?.max_multiplicative)
}

/// `true` iff `t` covers every vertex of `g` with `n - 1` edges of `g` and
/// is connected.
pub fn is_spanning_tree(g: &Graph, t: &SubtreeOfGraph) -> bool {
    t.host_order() == g.order() && t.is_spanning() && is_spanning_tree_edges(g, t.edges())
}

/// Edge-list form of [`is_spanning_tree`].
pub fn is_spanning_tree_edges(g: &Graph, edges: &[(usize, usize)]) -> bool {
    let n = g.order();
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(d: &mut [usize], mut v: usize) -> usize {
        while d[v] != v {
            d[v] = d[d[v]];
            v = d[v];
        }
        v
    }
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return false;
        }
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a == b {
            return false;
        }
        dsu[a] = b;
    }
    true
}

/// Largest `d_S(u, v) - d_G(u, v)` over pairs of vertices of the subtree `s`.
pub fn subtree_additive_slack(g: &Graph, s: &SubtreeOfGraph) -> (u32, (usize, usize)) {
    let n = g.order();
    let sg = s.to_graph();
    let mut acc = Accumulator::new();
    let mut dg = vec![u32::MAX; n];
    let mut ds = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let verts = s.vertices();
    for (i, &u) in verts.iter().enumerate() {
        dg.fill(u32::MAX);
        ds.fill(u32::MAX);
        bfs_levels(g, &[u], &mut dg, &mut queue);
        bfs_levels(&sg, &[u], &mut ds, &mut queue);
        for &v in &verts[i + 1..] {
            acc.record(u, v, dg[v], ds[v]);
        }
    }
    acc.add
}

/// `max_u d_G(u, V(S))` and a vertex attaining it.
pub fn max_distance_to_subtree(g: &Graph, s: &SubtreeOfGraph) -> Result<(u32, usize)> {
    let mut dist = vec![u32::MAX; g.order()];
    bfs_levels(g, s.vertices(), &mut dist, &mut VecDeque::new());
    let mut best = (0, s.vertices()[0]);
    for (v, &d) in dist.iter().enumerate() {
        if d == u32::MAX {
            return Err(Error::Disconnected);
        }
        if d > best.0 {
            best = (d, v);
        }
    }
    Ok(best)
}

/// Outcome of exhaustive spanning-tree search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSearch {
    /// Every spanning tree was examined.
    Conclusive {
        min_stretch: u32,
        best_tree: Vec<(usize, usize)>,
        trees: u64,
    },
    /// The budget ran out; `best_found` is an upper bound on the minimum.
    Inconclusive {
        best_found: Option<u32>,
        trees: u64,
        total: u128,
    },
}

/// Largest order accepted by [`min_additive_tree_stretch_bruteforce`].
pub const BRUTEFORCE_MAX_ORDER: usize = 24;

/// Minimum additive stretch over all spanning trees of `g`, by enumerating
/// spanning trees with edge inclusion/exclusion and connectivity pruning.
///
/// Stops after `budget` trees. Refuses graphs above
/// [`BRUTEFORCE_MAX_ORDER`] vertices or with more than `1000 · budget`
/// spanning trees (counted by the matrix-tree theorem).
pub fn min_additive_tree_stretch_bruteforce(g: &Graph, budget: u64) -> Result<TreeSearch> {
    let n = g.order();
    if !crate::graph::is_connected(g)? {
        return Err(Error::Disconnected);
    }
    if n > BRUTEFORCE_MAX_ORDER {
        return Err(Error::InstanceTooLarge(format!("order {n} exceeds {BRUTEFORCE_MAX_ORDER}")));
    }
    let total = spanning_tree_count(g)
        .ok_or_else(|| Error::InstanceTooLarge("spanning-tree count overflows".into()))?;
    if total > u128::from(budget) * 1000 {
        return Err(Error::InstanceTooLarge(format!("{total} spanning trees, budget {budget}")));
    }
    let dm = apsp(g);
    let dist_g: Vec<u32> = (0..n * n).map(|i| dm.get(i / n, i % n).expect("connected")).collect();
    let mut search = Enumerator {
        n,
        edges: g.edges().collect(),
        dist_g,
        chosen: Vec::with_capacity(n),
        budget,
        trees: 0,
        best: None,
        stopped: false,
    };
    let comp: Vec<usize> = (0..n).collect();
    search.recurse(0, &comp);
    Ok(match search.best {
        Some((min_stretch, best_tree)) if !search.stopped => {
            TreeSearch::Conclusive { min_stretch, best_tree, trees: search.trees }
        }
        best => TreeSearch::Inconclusive { best_found: best.map(|b| b.0), trees: search.trees, total },
    })
}

struct Enumerator {
    n: usize,
    edges: Vec<(usize, usize)>,
    dist_g: Vec<u32>,
    chosen: Vec<(usize, usize)>,
    budget: u64,
    trees: u64,
    best: Option<(u32, Vec<(usize, usize)>)>,
    stopped: bool,
}

impl Enumerator {
    /// `comp` labels the components of the chosen forest.
    fn recurse(&mut self, next: usize, comp: &[usize]) {
        if self.stopped {
            return;
        }
        if self.chosen.len() + 1 == self.n {
            self.evaluate();
            return;
        }
        if next == self.edges.len() || self.chosen.len() + (self.edges.len() - next) + 1 < self.n {
            return;
        }
        let (u, v) = self.edges[next];
        if comp[u] != comp[v] {
            let (from, to) = (comp[u].max(comp[v]), comp[u].min(comp[v]));
            let merged: Vec<usize> = comp.iter().map(|&c| if c == from { to } else { c }).collect();
            self.chosen.push((u, v));
            self.recurse(next + 1, &merged);
            self.chosen.pop();
        }
        if self.connected_without(next) {
            self.recurse(next + 1, comp);
        }
    }

    /// Whether chosen edges plus undecided edges after `skip` still connect.
    fn connected_without(&self, skip: usize) -> bool {
        let mut d: Vec<usize> = (0..self.n).collect();
        fn find(d: &mut [usize], mut v: usize) -> usize {
            while d[v] != v {
                v = d[v];
            }
            v
        }
        let mut parts = self.n;
        for &(u, v) in self.chosen.iter().chain(&self.edges[skip + 1..]) {
            let (a, b) = (find(&mut d, u), find(&mut d, v));
            if a != b {
                d[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }

    fn evaluate(&mut self) {
        if self.trees == self.budget {
            self.stopped = true;
            return;
        }
        self.trees += 1;
        let n = self.n;
        let t = Graph::new(n, self.chosen.iter().copied()).expect("chosen edges are simple");
        let limit = self.best.as_ref().map(|b| b.0);
        let mut worst = 0;
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        'outer: for u in 0..n {
            dist.fill(u32::MAX);
            bfs_levels(&t, &[u], &mut dist, &mut queue);
            for (v, &d) in dist.iter().enumerate().skip(u + 1) {
                worst = worst.max(d - self.dist_g[u * n + v]);
                if limit.is_some_and(|l| worst >= l) {
                    break 'outer;
                }
            }
        }
        if limit.is_none_or(|l| worst < l) {
            self.best = Some((worst, self.chosen.clone()));
        }
    }
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free
/// elimination); `None` on overflow.
pub fn spanning_tree_count(g: &Graph) -> Option<u128> {
    let n = g.order();
    if n <= 1 {
        return Some(1);
    }
    let k = n - 1;
    let mut a = vec![vec![0i128; k]; k];
    for (u, row) in a.iter_mut().enumerate() {
        row[u] = g.degree(u) as i128;
        for &w in g.neighbors(u) {
            if w < k {
                row[w] -= 1;
            }
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            let Some(swap) = (p + 1..k).find(|&r| a[r][p] != 0) else {
                return Some(0);
            };
            a.swap(p, swap);
            sign = -sign;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let x = a[i][j].checked_mul(a[p][p])?.checked_sub(a[i][p].checked_mul(a[p][j])?)?;
                a[i][j] = x / prev;
            }
        }
        prev = a[p][p];
    }
    u128::try_from(sign * a[k - 1][k - 1]).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_connected, random_tree, snowflake, Classic};

    fn cycle_minus_edge(n: usize) -> (Graph, SubtreeOfGraph) {
        let g = Classic::Cycle(n).build().unwrap();
        let t = SubtreeOfGraph::new(&g, 0..n, (1..n).map(|i| (i - 1, i))).unwrap();
        (g, t)
    }

    #[test]
    fn tree_against_itself() {
        let g = random_tree(25, 3).unwrap();
        let t = SubtreeOfGraph::from_tree_graph(&g).unwrap();
        let r = additive_stretch(&g, &t, VerifyMode::Exact).unwrap();
        assert_eq!(r.max_additive, 0);
        assert_eq!(r.max_multiplicative, Ratio::ONE);
        assert_eq!(r.pairs_checked, 25 * 24 / 2);
        assert_eq!(multiplicative_stretch(&g, &t), Ok(Ratio::ONE));
    }

    #[test]
    fn cycle_minus_edge_stretch() {
        for n in 3..12 {
            let (g, t) = cycle_minus_edge(n);
            let r = additive_stretch(&g, &t, VerifyMode::Exact).unwrap();
            assert_eq!(r.max_additive, n as u32 - 2);
            assert_eq!(r.witness_add, (0, n - 1));
            assert_eq!(r.max_multiplicative, Ratio::new(n as u32 - 1, 1));
        }
        assert_eq!(multiplicative_stretch(&cycle_minus_edge(4).0, &cycle_minus_edge(4).1), Ok(Ratio::new(3, 1)));
        assert_eq!(multiplicative_stretch(&cycle_minus_edge(6).0, &cycle_minus_edge(6).1), Ok(Ratio::new(5, 1)));
    }

    #[test]
    fn report_bound() {
        let (g, t) = cycle_minus_edge(8);
        let r = additive_stretch(&g, &t, VerifyMode::Exact).unwrap().with_bound(5);
        assert_eq!((r.max_additive, r.bound_holds), (6, Some(false)));
    }

    #[test]
    fn sampled_is_a_lower_bound_and_deterministic() {
        for seed in 0..20 {
            let g = random_connected(30, 60, seed).unwrap();
            let t = crate::spanner::bfs_spanning_tree(&g, 0).unwrap();
            let exact = additive_stretch(&g, &t, VerifyMode::Exact).unwrap();
            let mode = VerifyMode::Sampled { seed, pairs: 50 };
            let a = additive_stretch(&g, &t, mode).unwrap();
            assert!(a.max_additive <= exact.max_additive);
            assert!(a.max_multiplicative <= exact.max_multiplicative);
            assert_eq!(a.pairs_checked, 50);
            assert_eq!(a, additive_stretch(&g, &t, mode).unwrap());
        }
    }

    #[test]
    fn spanning_tree_checks() {
        let g = Classic::Cycle(5).build().unwrap();
        let bfs = crate::spanner::bfs_spanning_tree(&g, 0).unwrap();
        assert!(is_spanning_tree(&g, &bfs));
        let partial = SubtreeOfGraph::new(&g, 0..4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_spanning_tree(&g, &partial));
        // a spanning tree of K_5 uses the chord 0-2, which C_5 lacks
        let k5 = Classic::Complete(5).build().unwrap();
        let foreign = SubtreeOfGraph::new(&k5, 0..5, [(0, 2), (0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(!is_spanning_tree(&g, &foreign));
        assert!(!is_spanning_tree_edges(&g, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]));
        assert_eq!(additive_stretch(&g, &partial, VerifyMode::Exact), Err(Error::NotSpanningTree));
    }

    #[test]
    fn kirchhoff_counts() {
        assert_eq!(spanning_tree_count(&Classic::Complete(5).build().unwrap()), Some(125));
        assert_eq!(spanning_tree_count(&Classic::Cycle(7).build().unwrap()), Some(7));
        assert_eq!(spanning_tree_count(&Classic::Grid(2, 3).build().unwrap()), Some(15));
        assert_eq!(spanning_tree_count(&random_tree(9, 1).unwrap()), Some(1));
    }

    #[test]
    fn enumeration_counts_match_kirchhoff() {
        for seed in 0..15 {
            let g = random_connected(7, 11, seed).unwrap();
            let total = spanning_tree_count(&g).unwrap();
            match min_additive_tree_stretch_bruteforce(&g, 1_000_000).unwrap() {
                TreeSearch::Conclusive { trees, best_tree, min_stretch } => {
                    assert_eq!(u128::from(trees), total);
                    let t = SubtreeOfGraph::new(&g, 0..7, best_tree).unwrap();
                    assert_eq!(additive_stretch(&g, &t, VerifyMode::Exact).unwrap().max_additive, min_stretch);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        let t = random_tree(8, 4).unwrap();
        assert!(matches!(
            min_additive_tree_stretch_bruteforce(&t, 10),
            Ok(TreeSearch::Conclusive { min_stretch: 0, trees: 1, .. })
        ));
        let c4 = Classic::Cycle(4).build().unwrap();
        assert!(matches!(
            min_additive_tree_stretch_bruteforce(&c4, 10),
            Ok(TreeSearch::Conclusive { min_stretch: 2, trees: 4, .. })
        ));
        match min_additive_tree_stretch_bruteforce(&snowflake(2).unwrap(), 1_000_000).unwrap() {
            TreeSearch::Conclusive { min_stretch, .. } => assert!(min_stretch >= 2),
            other => panic!("unexpected {other:?}"),
        }
        let k6 = Classic::Complete(6).build().unwrap();
        assert!(matches!(
            min_additive_tree_stretch_bruteforce(&k6, 100),
            Ok(TreeSearch::Inconclusive { trees: 100, total: 1296, .. })
        ));
        assert!(matches!(
            min_additive_tree_stretch_bruteforce(&Classic::Grid(5, 6).build().unwrap(), 10),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
