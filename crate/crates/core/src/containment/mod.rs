//! Deciding and certifying the subgraph, topological-minor and minor relations,
//! plus the coloured variants.
//!
//! Every search returns a certificate or `None`. Certificates are checked by
//! [`crate::verify`], which shares no code with the searches here.

mod minor;
mod star;
mod subgraph;
mod topological;

pub use minor::contains_minor;
pub use star::contains_star;
pub use subgraph::{contains_colored_subgraph, contains_subgraph, is_colored_isomorphic};
pub use topological::{contains_colored_topological, contains_topological};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The subdivided star `T(p_1, ..., p_k)`: `k` paths of the given lengths
/// glued at a common centre.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarPattern {
    legs: Vec<usize>,
}

impl StarPattern {
    pub fn new(mut legs: Vec<usize>) -> Result<Self> {
        if legs.contains(&0) {
            return Err(Error::InvalidParameter("leg lengths must be positive".into()));
        }
        legs.sort_unstable();
        Ok(StarPattern { legs })
    }

    /// The plain star `S_k`.
    pub fn star(k: usize) -> Self {
        StarPattern { legs: vec![1; k] }
    }

    /// Parses `"1,1,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let legs = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad leg length {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        StarPattern::new(legs)
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn k(&self) -> usize {
        self.legs.len()
    }

    /// `p_k`, the longest leg (0 for the bare centre).
    pub fn longest(&self) -> usize {
        self.legs.last().copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.legs.iter().sum::<usize>()
    }

    /// Realization with centre 0 and legs laid out consecutively in sorted order.
    pub fn realize(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        let mut next = 1;
        for &p in &self.legs {
            let mut prev = 0;
            for _ in 0..p {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
        }
        g
    }

    pub fn label(&self) -> String {
        let legs: Vec<String> = self.legs.iter().map(|p| p.to_string()).collect();
        format!("T({})", legs.join(","))
    }
}

/// A copy of a subdivided star: the centre and one path per leg, in the
/// pattern's sorted leg order, each starting at the centre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub centre: usize,
    pub legs: Vec<Vec<usize>>,
}

/// An injective, adjacency-preserving vertex map (`vertex_map[i]` is the image
/// of pattern vertex `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub vertex_map: Vec<usize>,
}

/// A topological embedding: a vertex map plus, for every pattern edge `uv`
/// with `u < v`, a host path from the image of `u` to the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalEmbedding {
    pub vertex_map: Vec<usize>,
    pub edge_paths: Vec<((usize, usize), Vec<usize>)>,
}

/// Branch sets of a minor model, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
}

impl TopologicalEmbedding {
    /// Inner vertices of all edge paths.
    pub fn subdividers(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge_paths
            .iter()
            .flat_map(|(_, p)| p[1..p.len().saturating_sub(1)].iter().copied())
    }
}

impl From<Embedding> for TopologicalEmbedding {
    fn from(e: Embedding) -> Self {
        TopologicalEmbedding {
            vertex_map: e.vertex_map,
            edge_paths: Vec::new(),
        }
    }
}

impl Embedding {
    /// Reads an embedding as a topological one with single-edge paths.
    pub fn to_topological(&self, pattern: &Graph) -> TopologicalEmbedding {
        TopologicalEmbedding {
            vertex_map: self.vertex_map.clone(),
            edge_paths: pattern
                .edges()
                .map(|(u, v)| ((u, v), vec![self.vertex_map[u], self.vertex_map[v]]))
                .collect(),
        }
    }
}

/// Order in which backtracking searches place pattern vertices: component by
/// component, BFS from the highest-degree vertex, each non-root vertex with a
/// previously placed parent.
pub(crate) fn placement_order(pattern: &Graph) -> Vec<(usize, Option<usize>)> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    loop {
        let root = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)));
        let Some(root) = root else { break };
        placed[root] = true;
        order.push((root, None));
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head].0;
            head += 1;
            for &w in pattern.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push((w, Some(u)));
                }
            }
        }
    }
    order
}
