use super::{placement_order, Embedding};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};

/// Finds an embedding of `pattern` into `host` (`pattern <= host`).
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    Matcher::new(host, pattern, None).run()
}

/// Coloured variant: images must carry the same colour.
pub fn contains_colored_subgraph(host: &ColoredGraph, pattern: &ColoredGraph) -> Result<Option<Embedding>> {
    if host.alpha != pattern.alpha {
        return Err(Error::InvalidParameter("colour bounds differ".into()));
    }
    Ok(Matcher::new(&host.graph, &pattern.graph, Some((host.colors(), pattern.colors()))).run())
}

/// Colour-preserving isomorphism test, returning the map from `a` to `b`.
pub fn is_colored_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Option<Embedding> {
    if a.graph.n() != b.graph.n()
        || a.graph.edge_count() != b.graph.edge_count()
        || a.graph.degree_sequence() != b.graph.degree_sequence()
    {
        return None;
    }
    let mut ca = a.colors().to_vec();
    let mut cb = b.colors().to_vec();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return None;
    }
    // With equal edge counts an injective edge-preserving map is an isomorphism.
    Matcher::new(&b.graph, &a.graph, Some((b.colors(), a.colors()))).run()
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    colors: Option<(&'a [u64], &'a [u64])>,
    order: Vec<(usize, Option<usize>)>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, colors: Option<(&'a [u64], &'a [u64])>) -> Self {
        Matcher {
            host,
            pattern,
            colors,
            order: placement_order(pattern),
            map: vec![usize::MAX; pattern.n()],
            used: vec![false; host.n()],
        }
    }

    fn run(mut self) -> Option<Embedding> {
        if self.pattern.n() > self.host.n() || self.pattern.edge_count() > self.host.edge_count() {
            return None;
        }
        if self.place(0) {
            Some(Embedding { vertex_map: self.map })
        } else {
            None
        }
    }

    fn fits(&self, z: usize, x: usize) -> bool {
        if self.used[x] || self.host.degree(x) < self.pattern.degree(z) {
            return false;
        }
        if let Some((hc, pc)) = self.colors {
            if hc[x] != pc[z] {
                return false;
            }
        }
        self.pattern
            .neighbors(z)
            .iter()
            .all(|&y| self.map[y] == usize::MAX || self.host.has_edge(self.map[y], x))
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let (z, parent) = self.order[i];
        let candidates: Vec<usize> = match parent {
            Some(p) => self.host.neighbors(self.map[p]).to_vec(),
            None => (0..self.host.n()).collect(),
        };
        for x in candidates {
            if !self.fits(z, x) {
                continue;
            }
            self.map[z] = x;
            self.used[x] = true;
            if self.place(i + 1) {
                return true;
            }
            self.used[x] = false;
            self.map[z] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Alpha;

    #[test]
    fn cycle_contains_spanning_path() {
        let e = contains_subgraph(&Graph::cycle(5), &Graph::path(4)).unwrap();
        assert_eq!(e.vertex_map.len(), 5);
        assert!(contains_subgraph(&Graph::path(4), &Graph::cycle(5)).is_none());
    }

    #[test]
    fn colours_must_match() {
        let p1 = ColoredGraph::new(Graph::path(1), Alpha::Two, vec![0, 1]).unwrap();
        let k3 = ColoredGraph::uniform(Graph::clique(3), Alpha::Two, 0).unwrap();
        assert!(contains_colored_subgraph(&k3, &p1).unwrap().is_none());
        let k3b = ColoredGraph::new(Graph::clique(3), Alpha::Two, vec![0, 0, 1]).unwrap();
        let e = contains_colored_subgraph(&k3b, &p1).unwrap().unwrap();
        assert_eq!(e.vertex_map[1], 2);
        let omega = ColoredGraph::uniform(Graph::clique(3), Alpha::Omega, 0).unwrap();
        assert!(contains_colored_subgraph(&omega, &p1).is_err());
    }

    #[test]
    fn isomorphism_of_relabelled_graph() {
        let a = ColoredGraph::new(Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), Alpha::Two, vec![1, 0, 0, 0])
            .unwrap();
        let b = ColoredGraph::new(Graph::from_edges(4, &[(3, 2), (2, 0), (0, 1)]).unwrap(), Alpha::Two, vec![0, 0, 0, 1])
            .unwrap();
        let c = ColoredGraph::new(a.graph.clone(), Alpha::Two, vec![0, 1, 0, 0]).unwrap();
        let e = is_colored_isomorphic(&a, &b).unwrap();
        assert_eq!(e.vertex_map[0], 3);
        assert!(is_colored_isomorphic(&a, &c).is_none());
    }
}
