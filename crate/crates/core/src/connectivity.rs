//! Blocks, independent paths and long cycles.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;
use crate::longest_path;

/// Blocks and cutvertices of a graph with their incidences.
///
/// Blocks are sorted vertex lists, ordered lexicographically (so by smallest
/// vertex first). An isolated vertex forms a block on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTree {
    pub cutvertices: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    /// `(cutvertex, block index)` pairs.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockTree {
    pub fn is_cutvertex(&self, v: usize) -> bool {
        self.cutvertices.binary_search(&v).is_ok()
    }

    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].binary_search(&v).is_ok())
            .collect()
    }
}

const UNSEEN: usize = usize::MAX;

/// Lowpoint block decomposition, iterative so that long paths do not overflow
/// the stack.
pub fn block_tree(g: &Graph) -> BlockTree {
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if disc[s] != UNSEEN {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        if g.degree(s) == 0 {
            blocks.push(vec![s]);
            continue;
        }
        stack.push(s);
        let mut calls: Vec<(usize, usize, usize)> = vec![(s, UNSEEN, 0)];
        while let Some(top) = calls.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(w);
                    calls.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(u, _, _)) = calls.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = vec![u];
                    loop {
                        let x = stack.pop().expect("vertex stack underflow");
                        block.push(x);
                        if x == v {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
        stack.clear();
    }
    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &x in b {
            count[x] += 1;
        }
    }
    let cutvertices: Vec<usize> = (0..n).filter(|&x| count[x] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            if count[x] >= 2 {
                tree_edges.push((x, i));
            }
        }
    }
    tree_edges.sort_unstable();
    BlockTree {
        cutvertices,
        blocks,
        tree_edges,
    }
}

/// True for connected graphs on at least 3 vertices without a cutvertex.
pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && block_tree(g).blocks.len() == 1
}

/// Internally disjoint `u`–`v` paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub u: usize,
    pub v: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Unit-capacity network on split vertices: `2x` is the entry and `2x + 1`
/// the exit of `x`.
struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, a: usize, b: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            if a == t {
                break;
            }
            for &e in &self.head[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    via[b] = e;
                    queue.push_back(b);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut x = t;
        while x != s {
            let e = via[x];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            x = self.to[e ^ 1];
        }
        true
    }

    /// Forward arc with flow on it (residual capacity used up).
    fn carries(&self, e: usize) -> bool {
        e % 2 == 0 && self.cap[e] == 0
    }
}

/// A maximum family of internally disjoint `u`–`v` paths, capped at `limit`.
///
/// If `u` and `v` are adjacent the direct edge is one of the paths.
pub fn independent_paths(g: &Graph, u: usize, v: usize, limit: usize) -> Result<PathFamily> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidParameter("independent paths need distinct endpoints".into()));
    }
    let n = g.n();
    let mut net = Network::new(2 * n);
    for x in 0..n {
        if x != u && x != v {
            net.arc(2 * x, 2 * x + 1);
        }
    }
    for (a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            if x != v && y != u {
                net.arc(2 * x + 1, 2 * y);
            }
        }
    }
    let (s, t) = (2 * u + 1, 2 * v);
    let mut flow = 0;
    while flow < limit && net.augment(s, t) {
        flow += 1;
    }
    let mut paths = Vec::with_capacity(flow);
    for &first in &net.head[s] {
        if !net.carries(first) {
            continue;
        }
        let mut path = vec![u];
        let mut node = net.to[first];
        while node != t {
            let x = node / 2;
            path.push(x);
            let out = net.head[2 * x + 1]
                .iter()
                .copied()
                .find(|&e| net.carries(e))
                .expect("flow is conserved");
            node = net.to[out];
        }
        path.push(v);
        paths.push(path);
    }
    paths.sort();
    Ok(PathFamily { u, v, paths })
}

/// Maximum number of internally disjoint `u`–`v` paths, capped at `limit`.
pub fn local_connectivity(g: &Graph, u: usize, v: usize, limit: usize) -> Result<usize> {
    independent_paths(g, u, v, limit).map(|f| f.len())
}

pub const LONG_CYCLE_STEPS: usize = 20_000_000;

/// A cycle of length at least `n` in a 2-connected graph that contains a path
/// of length `n²`. Preconditions are checked and reported separately.
///
/// The cycle is returned as a vertex sequence; the closing edge joins the last
/// vertex to the first.
pub fn long_cycle(g: &Graph, n: usize) -> Result<Option<Vec<usize>>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !is_two_connected(g) {
        let bt = block_tree(g);
        return Err(Error::precondition_with("graph is not 2-connected", &bt));
    }
    let need = n * n;
    let bounds = longest_path::bounds(g, need)?;
    if bounds.lower < need {
        if bounds.upper < need {
            return Err(Error::precondition_with(
                format!("graph has no path of length {need}"),
                &serde_json::json!({ "longest_path_upper_bound": bounds.upper }),
            ));
        }
        return Err(Error::Inconclusive(format!(
            "could not decide whether a path of length {need} exists"
        )));
    }
    if let Some(c) = back_edge_cycle(g, n) {
        return Ok(Some(c));
    }
    exhaustive_cycle(g, n)
}

/// Longest cycle closed by a single back edge of a DFS tree, tried from every root.
fn back_edge_cycle(g: &Graph, n: usize) -> Option<Vec<usize>> {
    let size = g.n();
    for root in 0..size {
        let mut depth = vec![UNSEEN; size];
        let mut path: Vec<usize> = vec![root];
        let mut next = vec![0usize; size];
        depth[root] = 0;
        while let Some(&x) = path.last() {
            if next[x] < g.degree(x) {
                let w = g.neighbors(x)[next[x]];
                next[x] += 1;
                if depth[w] == UNSEEN {
                    depth[w] = path.len();
                    path.push(w);
                } else if depth[w] + 1 < path.len() && path[depth[w]] == w {
                    let len = path.len() - depth[w];
                    if len >= n.max(3) {
                        return Some(path[depth[w]..].to_vec());
                    }
                }
            } else {
                path.pop();
            }
        }
    }
    None
}

/// Exhaustive search over simple cycles, each rooted at its smallest vertex.
fn exhaustive_cycle(g: &Graph, n: usize) -> Result<Option<Vec<usize>>> {
    let budget = guard::limit("long_cycle_steps", LONG_CYCLE_STEPS);
    let mut steps = 0usize;
    let size = g.n();
    let mut on_path = vec![false; size];
    for s in 0..size {
        let mut path = vec![s];
        let mut next = vec![0usize];
        on_path[s] = true;
        while let Some(&x) = path.last() {
            let i = next.last_mut().unwrap();
            if *i >= g.degree(x) {
                on_path[x] = false;
                path.pop();
                next.pop();
                continue;
            }
            let w = g.neighbors(x)[*i];
            *i += 1;
            steps += 1;
            if steps > budget {
                return Err(Error::Resource(format!(
                    "long cycle search exceeded {budget} steps (guard long_cycle_steps)"
                )));
            }
            if w == s && path.len() >= n.max(3) {
                return Ok(Some(path));
            }
            if w > s && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                next.push(0);
            }
        }
    }
    Ok(None)
}
