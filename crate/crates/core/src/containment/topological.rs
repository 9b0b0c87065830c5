use super::{placement_order, TopologicalEmbedding};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};

/// Finds a topological embedding of `pattern` into `host` (`pattern ⊴ host`).
pub fn contains_topological(host: &Graph, pattern: &Graph) -> Option<TopologicalEmbedding> {
    Router::new(host, pattern, None).run()
}

/// Coloured variant. Only branch vertices are colour-constrained; subdividing
/// vertices may carry any colour.
pub fn contains_colored_topological(
    host: &ColoredGraph,
    pattern: &ColoredGraph,
) -> Result<Option<TopologicalEmbedding>> {
    if host.alpha != pattern.alpha {
        return Err(Error::InvalidParameter("colour bounds differ".into()));
    }
    Ok(Router::new(&host.graph, &pattern.graph, Some((host.colors(), pattern.colors()))).run())
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy)]
enum Goal {
    /// Tree edge towards the unplaced vertex `z`; the path end becomes its image.
    Free(usize),
    /// Back edge ending at an already placed image.
    Fixed(usize),
}

/// Backtracking router. Pattern vertices are placed in BFS order; each
/// non-root vertex is reached by a path from its parent's image and its
/// remaining edges to placed vertices are routed immediately. Paths are tried
/// shortest first, roots in ascending host degree.
struct Router<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    colors: Option<(&'a [u64], &'a [u64])>,
    order: Vec<(usize, Option<usize>)>,
    back: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    free: usize,
    edge_id: Vec<Vec<usize>>,
    paths: Vec<Vec<usize>>,
}

impl<'a> Router<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, colors: Option<(&'a [u64], &'a [u64])>) -> Self {
        let order = placement_order(pattern);
        let mut rank = vec![0; pattern.n()];
        for (i, &(z, _)) in order.iter().enumerate() {
            rank[z] = i;
        }
        let back = order
            .iter()
            .map(|&(z, parent)| {
                pattern
                    .neighbors(z)
                    .iter()
                    .copied()
                    .filter(|&y| rank[y] < rank[z] && Some(y) != parent)
                    .collect()
            })
            .collect();
        let mut edge_id = vec![vec![NONE; pattern.n()]; pattern.n()];
        let edges: Vec<_> = pattern.edges().collect();
        for (i, &(u, v)) in edges.iter().enumerate() {
            edge_id[u][v] = i;
            edge_id[v][u] = i;
        }
        Router {
            host,
            pattern,
            colors,
            order,
            back,
            map: vec![NONE; pattern.n()],
            used: vec![false; host.n()],
            free: host.n(),
            edge_id,
            paths: vec![Vec::new(); edges.len()],
        }
    }

    fn run(mut self) -> Option<TopologicalEmbedding> {
        if self.pattern.n() > self.host.n() || self.pattern.edge_count() > self.host.edge_count() {
            return None;
        }
        if !self.place(0) {
            return None;
        }
        let edge_paths = self
            .pattern
            .edges()
            .enumerate()
            .map(|(i, (u, v))| {
                let mut p = self.paths[i].clone();
                if p[0] != self.map[u] {
                    p.reverse();
                }
                ((u, v), p)
            })
            .collect();
        Some(TopologicalEmbedding {
            vertex_map: self.map,
            edge_paths,
        })
    }

    fn fits(&self, z: usize, x: usize) -> bool {
        if self.used[x] || self.host.degree(x) < self.pattern.degree(z) {
            return false;
        }
        match self.colors {
            Some((hc, pc)) => hc[x] == pc[z],
            None => true,
        }
    }

    fn occupy(&mut self, x: usize) {
        self.used[x] = true;
        self.free -= 1;
    }

    fn release(&mut self, x: usize) {
        self.used[x] = false;
        self.free += 1;
    }

    /// Every placed vertex still needs a free host neighbour per unplaced
    /// pattern neighbour.
    fn feasible(&self, placed: usize) -> bool {
        if self.order.len() - placed > self.free {
            return false;
        }
        self.order[..placed].iter().all(|&(y, _)| {
            let need = self.pattern.neighbors(y).iter().filter(|&&w| self.map[w] == NONE).count();
            need == 0
                || self
                    .host
                    .neighbors(self.map[y])
                    .iter()
                    .filter(|&&w| !self.used[w])
                    .count()
                    >= need
        })
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let (z, parent) = self.order[i];
        match parent {
            None => {
                let mut cands: Vec<usize> = (0..self.host.n()).filter(|&x| self.fits(z, x)).collect();
                cands.sort_by_key(|&x| (self.host.degree(x), x));
                for x in cands {
                    self.map[z] = x;
                    self.occupy(x);
                    if self.feasible(i + 1) && self.route_back(i, 0) {
                        return true;
                    }
                    self.release(x);
                    self.map[z] = NONE;
                }
                false
            }
            Some(p) => {
                let start = self.map[p];
                let max_len = self.free;
                for len in 1..=max_len {
                    let mut path = vec![start];
                    if self.walk(&mut path, len, Goal::Free(z), i, 0) {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Routes the `j`-th back edge of the `i`-th placed vertex.
    fn route_back(&mut self, i: usize, j: usize) -> bool {
        let z = self.order[i].0;
        if j == self.back[i].len() {
            return self.place(i + 1);
        }
        let y = self.back[i][j];
        let (from, to) = (self.map[y], self.map[z]);
        let max_len = self.free + 1;
        for len in 1..=max_len {
            let mut path = vec![from];
            if self.walk(&mut path, len, Goal::Fixed(to), i, j) {
                return true;
            }
        }
        false
    }

    /// Extends `path` by exactly `remaining` more edges through free vertices.
    fn walk(&mut self, path: &mut Vec<usize>, remaining: usize, goal: Goal, i: usize, j: usize) -> bool {
        let last = *path.last().unwrap();
        let nbrs = self.host.neighbors(last);
        if remaining == 1 {
            for idx in 0..nbrs.len() {
                let x = nbrs[idx];
                match goal {
                    Goal::Fixed(t) if x == t => {
                        path.push(x);
                        let ok = self.commit(path, goal, i, j);
                        path.pop();
                        return ok;
                    }
                    Goal::Free(z) if self.fits(z, x) => {
                        path.push(x);
                        if self.commit(path, goal, i, j) {
                            return true;
                        }
                        path.pop();
                    }
                    _ => {}
                }
            }
            return false;
        }
        let needed = match goal {
            Goal::Free(_) => remaining,
            Goal::Fixed(_) => remaining - 1,
        };
        if needed > self.free {
            return false;
        }
        for idx in 0..nbrs.len() {
            let x = nbrs[idx];
            if self.used[x] {
                continue;
            }
            self.occupy(x);
            path.push(x);
            if self.walk(path, remaining - 1, goal, i, j) {
                return true;
            }
            path.pop();
            self.release(x);
        }
        false
    }

    fn commit(&mut self, path: &[usize], goal: Goal, i: usize, j: usize) -> bool {
        let z = self.order[i].0;
        let (y, end) = match goal {
            Goal::Free(_) => (self.order[i].1.unwrap(), *path.last().unwrap()),
            Goal::Fixed(_) => (self.back[i][j], NONE),
        };
        let e = self.edge_id[y][z];
        self.paths[e] = path.to_vec();
        let ok = match goal {
            Goal::Free(_) => {
                self.map[z] = end;
                self.occupy(end);
                let ok = self.feasible(i + 1) && self.route_back(i, 0);
                if !ok {
                    self.release(end);
                    self.map[z] = NONE;
                }
                ok
            }
            Goal::Fixed(_) => self.feasible(i + 1) && self.route_back(i, j + 1),
        };
        if !ok {
            self.paths[e].clear();
        }
        ok
    }
}
