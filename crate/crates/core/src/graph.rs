//! Finite simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple graph. Neighbour lists are kept sorted, so every traversal
/// that walks them breaks ties by ascending vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
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
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.n()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n() })
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let pu = self.adj.get(u).and_then(|a| a.binary_search(&v).ok());
        match pu {
            Some(pu) => {
                self.adj[u].remove(pu);
                let pv = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pv);
                self.m -= 1;
                Ok(())
            }
            None => Err(Error::MissingEdge(u, v)),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced edge");
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest `s`–`t` path, if any.
    pub fn shortest_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("union edge");
        }
        g
    }

    /// Replaces `uv` by a path with `times` new inner vertices, appended after the
    /// existing ids in order from `u` to `v` (with `u < v`).
    pub fn subdivide_edge(&self, u: usize, v: usize, times: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        if times == 0 {
            return Ok(self.clone());
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        let mut prev = u;
        for _ in 0..times {
            let x = g.add_vertex();
            g.add_edge(prev, x)?;
            prev = x;
        }
        g.add_edge(prev, v)?;
        Ok(g)
    }

    /// The star `S_G(v)`: `v`, its neighbours, and exactly the edges at `v`.
    /// Vertex 0 of the result is `v`; the rest follow in neighbour order.
    pub fn star_at(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let d = self.degree(v);
        let mut g = Graph::new(d + 1);
        for i in 0..d {
            g.add_edge(0, i + 1)?;
        }
        Ok(g)
    }

    /// Whether `path` is an `X`-path: both ends in `X`, no inner vertex in `X`.
    pub fn is_x_path(&self, path: &Path, x: &[usize]) -> Result<bool> {
        path.validate(self)?;
        if path.len() == 0 {
            return Err(Error::InvalidParameter("trivial path".into()));
        }
        let vs = path.vertices();
        let in_x = |v: &usize| x.contains(v);
        Ok(in_x(&vs[0]) && in_x(vs.last().unwrap()) && !vs[1..vs.len() - 1].iter().any(in_x))
    }

    pub fn named(kind: Named) -> Result<Graph> {
        match kind {
            Named::Path(n) => {
                let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(n + 1, &edges)
            }
            Named::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)
            }
            Named::Clique(n) => {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edge(u, v)?;
                    }
                }
                Ok(g)
            }
            Named::CompleteBipartite(a, b) => {
                let mut g = Graph::new(a + b);
                for u in 0..a {
                    for v in 0..b {
                        g.add_edge(u, a + v)?;
                    }
                }
                Ok(g)
            }
        }
    }

    pub fn path(n: usize) -> Graph {
        Graph::named(Named::Path(n)).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::named(Named::Cycle(n)).expect("cycle length >= 3")
    }

    pub fn clique(n: usize) -> Graph {
        Graph::named(Named::Clique(n)).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// Every edge subdivided `times` times.
    pub fn subdivide_all(&self, times: usize) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..times {
                let x = g.add_vertex();
                g.add_edge(prev, x).unwrap();
                prev = x;
            }
            g.add_edge(prev, v).unwrap();
        }
        g
    }
}

/// The named families `P_n`, `C_n`, `K^n`, `K_{n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    /// Path of length `n` (so `n + 1` vertices).
    Path(usize),
    Cycle(usize),
    Clique(usize),
    CompleteBipartite(usize, usize),
}

/// Colour bound of a coloured graph: 2 colours or unboundedly many.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alpha {
    Two,
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub alpha: Alpha,
    colors: Vec<u64>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, alpha: Alpha, colors: Vec<u64>) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::InvalidGraph(format!(
                "{} colours for {} vertices",
                colors.len(),
                graph.n()
            )));
        }
        if alpha == Alpha::Two {
            if let Some(v) = colors.iter().position(|&c| c > 1) {
                return Err(Error::InvalidGraph(format!("vertex {v} has colour {} in a 2-graph", colors[v])));
            }
        }
        Ok(ColoredGraph { graph, alpha, colors })
    }

    pub fn uniform(graph: Graph, alpha: Alpha, color: u64) -> Result<Self> {
        let n = graph.n();
        ColoredGraph::new(graph, alpha, vec![color; n])
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u64 {
        self.colors[v]
    }

    pub fn induced(&self, vertices: &[usize]) -> ColoredGraph {
        ColoredGraph {
            graph: self.graph.induced(vertices),
            alpha: self.alpha,
            colors: vertices.iter().map(|&v| self.colors[v]).collect(),
        }
    }
}

/// A path given by its vertex sequence. Length is the number of edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("empty path".into()));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("path repeats a vertex".into()));
        }
        Ok(Path(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 1
    }

    /// Checks that consecutive vertices are adjacent in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.0 {
            g.check_vertex(v)?;
        }
        for w in self.0.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::MissingEdge(w[0], w[1]));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_counts() {
        let p3 = Graph::named(Named::Path(3)).unwrap();
        assert_eq!((p3.n(), p3.edge_count()), (4, 3));
        let k5 = Graph::named(Named::Clique(5)).unwrap();
        assert_eq!((k5.n(), k5.edge_count()), (5, 10));
        let k33 = Graph::named(Named::CompleteBipartite(3, 3)).unwrap();
        assert_eq!((k33.n(), k33.edge_count()), (6, 9));
        assert!(Graph::named(Named::Cycle(2)).is_err());
        let p = Graph::petersen();
        assert_eq!((p.n(), p.edge_count(), p.max_degree(), p.min_degree()), (10, 15, 3, 3));
    }

    #[test]
    fn subdivide_triangle_edge_gives_c4() {
        let g = Graph::clique(3).subdivide_edge(0, 1, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert_eq!(g.degree_sequence(), vec![2, 2, 2, 2]);
        assert!(g.is_connected());
    }

    #[test]
    fn subdivide_p1_twice_gives_p3() {
        let g = Graph::path(1).subdivide_edge(0, 1, 2).unwrap();
        assert_eq!(g.degree_sequence(), Graph::path(3).degree_sequence());
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_connected());
        assert_eq!(Graph::clique(4).subdivide_edge(1, 2, 0).unwrap(), Graph::clique(4));
        assert_eq!(Graph::path(2).subdivide_edge(0, 2, 1), Err(Error::MissingEdge(0, 2)));
    }

    #[test]
    fn stars() {
        assert_eq!(Graph::clique(4).star_at(0).unwrap().edge_count(), 3);
        assert_eq!(Graph::path(2).star_at(1).unwrap().edge_count(), 2);
        let single = Graph::new(1).star_at(0).unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));
        assert!(Graph::new(1).star_at(3).is_err());
    }

    #[test]
    fn x_paths() {
        let c4 = Graph::cycle(4);
        let abc = Path::new(vec![0, 1, 2]).unwrap();
        assert!(c4.is_x_path(&abc, &[0, 2]).unwrap());
        assert!(!c4.is_x_path(&abc, &[0, 1, 2]).unwrap());
        assert!(!c4.is_x_path(&Path::new(vec![0, 1]).unwrap(), &[0]).unwrap());
        assert!(c4.is_x_path(&Path::new(vec![0]).unwrap(), &[0]).is_err());
    }

    #[test]
    fn simple_invariants() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 0).is_err());
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.edge_count(), 1);
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(ColoredGraph::new(Graph::new(2), Alpha::Two, vec![0, 2]).is_err());
        assert!(ColoredGraph::new(Graph::new(2), Alpha::Omega, vec![0, 7]).is_ok());
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::cycle(3).disjoint_union(&Graph::path(2));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!g.is_connected());
    }
}
