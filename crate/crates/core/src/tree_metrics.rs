//! Branch and leaf sets of trees, the nested sequence
//! `T_0 ⊃ T_1 ⊃ … ⊃ T_d` obtained by shrinking to the minimal subtree
//! spanning the branch vertices, and a brute-force oracle for the depth of
//! the largest perfect binary tree topological minor.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

/// The chain of node subsets `levels[0] = V(T) ⊋ levels[1] ⊋ … ⊋ levels[d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NestedTreeSequence {
    /// Sorted node ids of each level.
    pub levels: Vec<Vec<usize>>,
    /// Index of the last level.
    pub d: usize,
}

impl NestedTreeSequence {
    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// `(B, L)` of the subtree induced by `nodes`: degree `≥ 3` and degree
/// `≤ 1` measured inside the subtree. A lone node is a leaf.
pub fn branch_and_leaf(t: &Graph, nodes: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mask = induced_mask(t, nodes)?;
    let mut branch = Vec::new();
    let mut leaves = Vec::new();
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &v in &sorted {
        let deg = inner_degree(t, &mask, v);
        if deg >= 3 {
            branch.push(v);
        } else if deg <= 1 {
            leaves.push(v);
        }
    }
    Ok((branch, leaves))
}

fn induced_mask(t: &Graph, nodes: &[usize]) -> Result<Vec<bool>> {
    if nodes.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut mask = vec![false; t.order()];
    for &v in nodes {
        t.check_vertex(v)?;
        mask[v] = true;
    }
    // connected check by DFS inside the mask
    let mut seen = vec![false; t.order()];
    let mut stack = vec![nodes[0]];
    seen[nodes[0]] = true;
    let mut count = 0;
    while let Some(u) = stack.pop() {
        count += 1;
        for &w in t.neighbors(u) {
            if mask[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if count != mask.iter().filter(|&&m| m).count() {
        return Err(Error::NotASubtree);
    }
    Ok(mask)
}

#[inline]
fn inner_degree(t: &Graph, mask: &[bool], v: usize) -> usize {
    t.neighbors(v).iter().filter(|&&w| mask[w]).count()
}

/// Builds the nested sequence of a tree.
///
/// While the current level has branch vertices, the next level is the
/// minimal subtree containing them (prune non-branch leaves). Once the
/// level is a path of length `ℓ`: for `ℓ ≥ 3` one more level holding the
/// path's median node is appended; for `ℓ ≤ 2` the sequence stops.
pub fn nested_sequence(t: &Graph) -> Result<NestedTreeSequence> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.order();
    let mut mask = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    let mut is_branch = vec![false; n];
    let mut queue = Vec::new();
    loop {
        let current = levels.last().expect("at least one level");
        let branch: Vec<usize> = current.iter().copied().filter(|&v| deg[v] >= 3).collect();
        if branch.is_empty() {
            let len = current.len() - 1;
            if len >= 3 {
                let path = path_order(t, &mask, current);
                levels.push(vec![path[len / 2]]);
            }
            break;
        }
        for &v in &branch {
            is_branch[v] = true;
        }
        queue.clear();
        queue.extend(current.iter().copied().filter(|&v| deg[v] <= 1 && !is_branch[v]));
        while let Some(v) = queue.pop() {
            mask[v] = false;
            for &w in t.neighbors(v) {
                if mask[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 && !is_branch[w] {
                        queue.push(w);
                    }
                }
            }
        }
        for &v in &branch {
            is_branch[v] = false;
        }
        let next: Vec<usize> = current.iter().copied().filter(|&v| mask[v]).collect();
        levels.push(next);
    }
    let d = levels.len() - 1;
    Ok(NestedTreeSequence { levels, d })
}

/// Nodes of a path-shaped level, starting from the smaller-id endpoint.
fn path_order(t: &Graph, mask: &[bool], nodes: &[usize]) -> Vec<usize> {
    let start = nodes
        .iter()
        .copied()
        .find(|&v| inner_degree(t, mask, v) <= 1)
        .expect("a path has an endpoint");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = t.neighbors(cur).iter().find(|&&w| mask[w] && w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// `d(T)`, the index of the last level of [`nested_sequence`].
pub fn d_of_tree(t: &Graph) -> Result<usize> {
    Ok(nested_sequence(t)?.d)
}

/// Depth of the largest perfect binary tree that is a topological minor of
/// `t`, by dynamic programming over every choice of root image.
///
/// `reach(v)` is the largest `b` such that a subdivided depth-`b` perfect
/// binary tree hangs below `v` with its root joined to `v` by a (possibly
/// empty) path; rooting at `v` itself needs two children of reach `b - 1`.
/// Quadratic in the order of `t`.
pub fn pbt_bruteforce(t: &Graph) -> Result<u32> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut reach = vec![0u32; n];
    let mut best = 0;
    for root in 0..n {
        order.clear();
        order.push(root);
        parent[root] = usize::MAX;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in t.neighbors(u) {
                if w != parent[u] {
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            let (mut first, mut second) = (None::<u32>, None::<u32>);
            let mut deepest = 0;
            for &c in t.neighbors(v) {
                if c == parent[v] {
                    continue;
                }
                let r = reach[c];
                deepest = deepest.max(r);
                if first.is_none_or(|f| r > f) {
                    second = first;
                    first = Some(r);
                } else if second.is_none_or(|s| r > s) {
                    second = Some(r);
                }
            }
            let rooted_here = second.map_or(0, |s| s + 1);
            if v == root {
                best = best.max(rooted_here);
            }
            reach[v] = rooted_here.max(deepest);
        }
    }
    Ok(best)
}
