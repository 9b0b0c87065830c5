//! Bounds on the longest path of a graph.
//!
//! Exact for small components (bitmask dynamic programming), trees and
//! cycles. Otherwise the upper bound sums per-block bounds along the heaviest
//! path of the block-cut tree and the lower bound comes from a double BFS
//! sweep refined by a budgeted depth-first search.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::block_tree;
use crate::error::Result;
use crate::graph::Graph;
use crate::guard;

pub const DP_VERTICES: usize = 20;
pub const DFS_STEPS: usize = 200_000;
pub const ROTATIONS: usize = 20_000;
pub const GREEDY_VERTICES: usize = 50_000;
pub const EXCHANGE_STEPS: usize = 20_000_000;

/// Path lengths are counted in edges. `witness` realizes `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<usize>,
}

impl Bounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// `Some(true)` if a path of length `len` certainly exists, `Some(false)`
    /// if it certainly does not.
    pub fn decides(&self, len: usize) -> Option<bool> {
        if self.lower >= len {
            Some(true)
        } else if self.upper < len {
            Some(false)
        } else {
            None
        }
    }
}

/// Longest-path bounds for `g`. Computation stops early once a path of length
/// `target` is known (pass `usize::MAX` for full bounds).
pub fn bounds(g: &Graph, target: usize) -> Result<Bounds> {
    let mut best = Bounds {
        lower: 0,
        upper: 0,
        witness: if g.n() > 0 { vec![0] } else { Vec::new() },
    };
    let dp_limit = guard::limit("longest_path_dp", DP_VERTICES).min(26);
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let sub = g.induced(&comp);
        let b = if comp.len() <= dp_limit {
            exact_small(&sub)
        } else {
            component_bounds(&sub, target)
        };
        if b.lower > best.lower {
            best.lower = b.lower;
            best.witness = b.witness.iter().map(|&i| comp[i]).collect();
        }
        best.upper = best.upper.max(b.upper);
        if best.lower >= target {
            best.upper = best.upper.max(best.lower);
            return Ok(best);
        }
    }
    Ok(best)
}

/// Exact longest path by dynamic programming over vertex subsets.
pub fn exact_small(g: &Graph) -> Bounds {
    let n = g.n();
    if n == 0 {
        return Bounds {
            lower: 0,
            upper: 0,
            witness: Vec::new(),
        };
    }
    assert!(n <= 26, "bitmask dynamic programming needs at most 26 vertices");
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    // ends[mask]: vertices at which some path covering exactly `mask` ends.
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best_mask = 1usize;
    for mask in 1usize..1 << n {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > best_mask.count_ones() {
            best_mask = mask;
        }
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut ext = nbr[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let mut mask = best_mask;
    let mut v = ends[mask].trailing_zeros() as usize;
    let mut path = vec![v];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << v);
        let u = (ends[prev_mask] & nbr[v]).trailing_zeros() as usize;
        path.push(u);
        mask = prev_mask;
        v = u;
    }
    let len = path.len() - 1;
    Bounds {
        lower: len,
        upper: len,
        witness: path,
    }
}

fn component_bounds(g: &Graph, target: usize) -> Bounds {
    let n = g.n();
    let m = g.edge_count();
    let sweep = double_sweep(g);
    if m + 1 == n {
        let len = sweep.len() - 1;
        return Bounds {
            lower: len,
            upper: len,
            witness: sweep,
        };
    }
    if m == n && g.max_degree() == 2 {
        let mut path = vec![0];
        let mut prev = usize::MAX;
        while path.len() < n {
            let x = *path.last().unwrap();
            let next = g.neighbors(x).iter().copied().find(|&w| w != prev).unwrap();
            prev = x;
            path.push(next);
        }
        return Bounds {
            lower: n - 1,
            upper: n - 1,
            witness: path,
        };
    }
    let mut witness = sweep;
    if witness.len() - 1 < target && n <= guard::limit("longest_path_greedy", GREEDY_VERTICES) {
        let walk = reach_greedy(g);
        if walk.len() > witness.len() {
            witness = walk;
        }
    }
    if witness.len() - 1 < target {
        let budget = guard::limit("longest_path_dfs", DFS_STEPS);
        witness = extend_by_dfs(g, witness, budget, target);
    }
    if witness.len() - 1 < target {
        let budget = guard::limit("longest_path_rotations", ROTATIONS);
        witness = extend_by_rotation(g, witness, budget, target);
    }
    if witness.len() - 1 < target {
        let budget = guard::limit("longest_path_exchange", EXCHANGE_STEPS);
        witness = improve_by_exchange(g, witness, budget, target);
    }
    let upper = block_upper_bound(g).max(witness.len() - 1);
    Bounds {
        lower: witness.len() - 1,
        upper,
        witness,
    }
}

fn bfs_far(g: &Graph, s: usize) -> (usize, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    let mut last = s;
    while let Some(u) = queue.pop_front() {
        last = u;
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (last, parent)
}

/// A diametral-ish shortest path found by two BFS sweeps.
fn double_sweep(g: &Graph) -> Vec<usize> {
    let (a, _) = bfs_far(g, 0);
    let (b, parent) = bfs_far(g, a);
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[x];
        path.push(x);
    }
    path
}

/// Searches for longer paths starting from either end of `seed`.
fn extend_by_dfs(g: &Graph, seed: Vec<usize>, budget: usize, target: usize) -> Vec<usize> {
    let mut best = seed;
    let per_end = budget / 2;
    for start in [best[0], *best.last().unwrap()] {
        let mut steps = 0;
        let mut on = vec![false; g.n()];
        let mut path = vec![start];
        let mut next = vec![0usize];
        on[start] = true;
        while let Some(&x) = path.last() {
            if path.len() > best.len() {
                best = path.clone();
                if best.len() > target {
                    return best;
                }
            }
            if steps >= per_end {
                break;
            }
            let i = next.last_mut().unwrap();
            if *i >= g.degree(x) {
                on[x] = false;
                path.pop();
                next.pop();
                continue;
            }
            let w = g.neighbors(x)[*i];
            *i += 1;
            steps += 1;
            if !on[w] {
                on[w] = true;
                path.push(w);
                next.push(0);
            }
        }
    }
    best
}

/// Walk from a minimum-degree vertex, always stepping to the neighbour that
/// keeps the most unvisited vertices reachable (fewest free neighbours on
/// ties), then extend the other end the same way. Quadratic in the worst case.
fn reach_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut on = vec![false; n];
    let mut seen = vec![usize::MAX; n];
    let mut stamp = 0;
    let reach = |on: &[bool], from: usize, stamp: usize, seen: &mut Vec<usize>| {
        let mut stack = vec![from];
        seen[from] = stamp;
        let mut count = 0;
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !on[y] && seen[y] != stamp {
                    seen[y] = stamp;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    };
    let start = (0..n).min_by_key(|&v| g.degree(v)).unwrap_or(0);
    let mut path = vec![start];
    on[start] = true;
    for _ in 0..2 {
        loop {
            let x = *path.last().unwrap();
            let free: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| !on[w]).collect();
            let pick = match free.len() {
                0 => break,
                1 => free[0],
                _ => *free
                    .iter()
                    .max_by_key(|&&w| {
                        on[w] = true;
                        stamp += 1;
                        let r = reach(&on, w, stamp, &mut seen);
                        on[w] = false;
                        let deg = g.neighbors(w).iter().filter(|&&y| !on[y] && y != w).count();
                        (r, std::cmp::Reverse(deg))
                    })
                    .unwrap(),
            };
            on[pick] = true;
            path.push(pick);
        }
        path.reverse();
    }
    path
}

/// Pósa rotation-extension: grow greedily at both ends, and when stuck rotate
/// the path about a neighbour of the tail to expose a new endpoint.
fn extend_by_rotation(g: &Graph, seed: Vec<usize>, budget: usize, target: usize) -> Vec<usize> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut on = vec![false; n];
    let mut pos = vec![usize::MAX; n];
    // Start from a minimum-degree vertex; the seed is kept only as a fallback.
    let start = (0..n).min_by_key(|&v| g.degree(v)).unwrap_or(0);
    let mut path = vec![start];
    for (i, &v) in path.iter().enumerate() {
        on[v] = true;
        pos[v] = i;
    }
    let mut best = seed;
    let free_degree = |on: &[bool], v: usize| g.neighbors(v).iter().filter(|&&w| !on[w]).count();
    for round in 0..budget {
        for _ in 0..2 {
            // Extend at the tail, preferring neighbours with few free neighbours.
            loop {
                let x = *path.last().unwrap();
                let next = g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&w| !on[w])
                    .min_by_key(|&w| free_degree(&on, w));
                let Some(w) = next else { break };
                on[w] = true;
                pos[w] = path.len();
                path.push(w);
            }
            path.reverse();
            for (i, &v) in path.iter().enumerate() {
                pos[v] = i;
            }
        }
        if path.len() > best.len() {
            best = path.clone();
            if best.len() > target {
                return best;
            }
        }
        if round % 2 == 1 {
            path.reverse();
            for (i, &v) in path.iter().enumerate() {
                pos[v] = i;
            }
        }
        let x = *path.last().unwrap();
        let pivots: Vec<usize> = g
            .neighbors(x)
            .iter()
            .filter(|&&y| on[y])
            .map(|&y| pos[y])
            .filter(|&i| i + 2 < path.len())
            .collect();
        if pivots.is_empty() {
            continue;
        }
        let opens = |&&i: &&usize| free_degree(&on, path[i + 1]) > 0;
        let i = match pivots.iter().find(opens) {
            Some(&i) => i,
            None => pivots[rng.gen_range(0..pivots.len())],
        };
        path[i + 1..].reverse();
        for (j, &v) in path.iter().enumerate().skip(i + 1) {
            pos[v] = j;
        }
    }
    best
}

/// Local search: replace the stretch of the path between two attachment points
/// (or a tail beyond one) by a longer path through vertices not on it.
fn improve_by_exchange(g: &Graph, mut path: Vec<usize>, budget: usize, target: usize) -> Vec<usize> {
    const PER_START: usize = 2_000;
    let n = g.n();
    let mut steps = 0;
    'outer: while path.len() - 1 < target && steps < budget {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in path.iter().enumerate() {
            pos[v] = i;
        }
        let len = path.len();
        for i in 0..len {
            for &c in g.neighbors(path[i]) {
                if pos[c] != usize::MAX {
                    continue;
                }
                // Bounded DFS over free vertices from `c`.
                let mut on = vec![false; n];
                let mut q = vec![c];
                let mut next = vec![0usize];
                on[c] = true;
                let mut local = 0;
                while let Some(&x) = q.last() {
                    // Try every way of closing the free path `q` back onto the path.
                    let tail_gain = q.len() as isize - (len - 1 - i) as isize;
                    let head_gain = q.len() as isize - i as isize;
                    let mut best: Option<(isize, Vec<usize>)> = None;
                    if tail_gain > 0 {
                        let mut p = path[..=i].to_vec();
                        p.extend_from_slice(&q);
                        best = Some((tail_gain, p));
                    }
                    if head_gain > 0 && best.as_ref().map_or(true, |b| b.0 < head_gain) {
                        let mut p: Vec<usize> = q.iter().rev().copied().collect();
                        p.extend_from_slice(&path[i..]);
                        best = Some((head_gain, p));
                    }
                    for &y in g.neighbors(x) {
                        let j = pos[y];
                        if j == usize::MAX || j == i {
                            continue;
                        }
                        let (lo, hi) = (i.min(j), i.max(j));
                        let gain = q.len() as isize - (hi - lo - 1) as isize;
                        if gain > 0 && best.as_ref().map_or(true, |b| b.0 < gain) {
                            let mut p = path[..=lo].to_vec();
                            if lo == i {
                                p.extend_from_slice(&q);
                            } else {
                                p.extend(q.iter().rev());
                            }
                            p.extend_from_slice(&path[hi..]);
                            best = Some((gain, p));
                        }
                    }
                    if let Some((_, p)) = best {
                        path = p;
                        steps += local;
                        continue 'outer;
                    }
                    if local >= PER_START {
                        break;
                    }
                    let k = next.last_mut().unwrap();
                    if *k >= g.degree(x) {
                        on[x] = false;
                        q.pop();
                        next.pop();
                        continue;
                    }
                    let w = g.neighbors(x)[*k];
                    *k += 1;
                    local += 1;
                    if pos[w] == usize::MAX && !on[w] {
                        on[w] = true;
                        q.push(w);
                        next.push(0);
                    }
                }
                steps += local;
                if steps >= budget {
                    break 'outer;
                }
            }
        }
        break;
    }
    path
}

/// Heaviest path in the block-cut tree, each block weighted by an upper bound
/// on the longest path inside it.
fn block_upper_bound(g: &Graph) -> usize {
    let bt = block_tree(g);
    let nb = bt.blocks.len();
    let dp_limit = guard::limit("longest_path_dp", DP_VERTICES).min(26);
    let weight: Vec<usize> = bt
        .blocks
        .iter()
        .map(|b| {
            let sub = g.induced(b);
            if b.len() <= dp_limit {
                exact_small(&sub).upper
            } else {
                b.len() - 1
            }
        })
        .collect();
    let cut_index: std::collections::HashMap<usize, usize> =
        bt.cutvertices.iter().enumerate().map(|(i, &c)| (c, nb + i)).collect();
    let total = nb + bt.cutvertices.len();
    let mut adj = vec![Vec::new(); total];
    for &(c, b) in &bt.tree_edges {
        let ci = cut_index[&c];
        adj[ci].push(b);
        adj[b].push(ci);
    }
    let w = |x: usize| if x < nb { weight[x] } else { 0 };
    // Iterative post-order: down[x] is the heaviest chain from x into its subtree.
    let mut down = vec![0usize; total];
    let mut seen = vec![false; total];
    let mut best = 0;
    for root in 0..total {
        if seen[root] {
            continue;
        }
        let mut order = Vec::new();
        let mut stack = vec![(root, usize::MAX)];
        let mut par = std::collections::HashMap::new();
        seen[root] = true;
        while let Some((x, p)) = stack.pop() {
            order.push(x);
            par.insert(x, p);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push((y, x));
                }
            }
        }
        for &x in order.iter().rev() {
            let p = par[&x];
            let (mut top1, mut top2) = (0, 0);
            for &y in &adj[x] {
                if y == p {
                    continue;
                }
                let d = down[y];
                if d > top1 {
                    top2 = top1;
                    top1 = d;
                } else if d > top2 {
                    top2 = d;
                }
            }
            down[x] = w(x) + top1;
            best = best.max(w(x) + top1 + top2);
        }
    }
    best
}

/// Whether `g` has a path of length `len`, with a witness when it does.
/// `None` means the bounds were inconclusive.
pub fn has_path_of_length(g: &Graph, len: usize) -> Result<Option<Option<Vec<usize>>>> {
    let b = bounds(g, len)?;
    Ok(match b.decides(len) {
        Some(true) => Some(Some(b.witness[..=len].to_vec())),
        Some(false) => Some(None),
        None => None,
    })
}
