//! Edge blow-up, the threshold graph of independent paths, degree-2
//! suppression, and the passage from a minor to a topological minor of
//! minimum degree three.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::local_connectivity;
use crate::containment::{contains_minor, MinorModel, TopologicalEmbedding};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `base` with every edge replaced by `copies` internally disjoint paths of length 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpGraph {
    pub graph: Graph,
    pub base_n: usize,
    pub copies: usize,
    /// Base edges in sorted order; edge `e` owns the subdividers
    /// `base_n + e * copies .. base_n + (e + 1) * copies`.
    pub base_edges: Vec<(usize, usize)>,
}

impl BlownUpGraph {
    /// The `i`-th subdivider of base edge `uv`.
    pub fn subdivider_index(&self, u: usize, v: usize, i: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        let e = self.base_edges.binary_search(&key).ok()?;
        (i < self.copies).then(|| self.base_n + e * self.copies + i)
    }
}

pub fn blowup(g: &Graph, copies: usize) -> Result<BlownUpGraph> {
    if copies == 0 {
        return Err(Error::InvalidParameter("blow-up needs at least one copy per edge".into()));
    }
    let base_edges = g.edge_list();
    let n = g.n();
    let mut out = Graph::new(n + copies * base_edges.len());
    for (e, &(u, v)) in base_edges.iter().enumerate() {
        for i in 0..copies {
            let x = n + e * copies + i;
            out.add_edge(u, x)?;
            out.add_edge(x, v)?;
        }
    }
    Ok(BlownUpGraph {
        graph: out,
        base_n: n,
        copies,
        base_edges,
    })
}

/// Same vertex set as `g`; `uv` is an edge iff `g` has at least `t`
/// independent `u`–`v` paths.
pub fn derive_gamma_star(g: &Graph, t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("threshold must be positive".into()));
    }
    let n = g.n();
    let candidates: Vec<(usize, usize)> = (0..n)
        .filter(|&u| g.degree(u) >= t)
        .flat_map(|u| (u + 1..n).filter(move |&v| g.degree(v) >= t).map(move |v| (u, v)))
        .collect();
    let hits: Vec<(usize, usize)> = candidates
        .par_iter()
        .filter_map(|&(u, v)| match local_connectivity(g, u, v, t) {
            Ok(c) if c >= t => Some(Ok((u, v))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::from_edges(n, &hits)
}

/// Result of suppressing all degree-2 vertices.
///
/// Vertex `i` of `graph` is `kept[i]` of the input, and edge `ab` of `graph`
/// stands for the input path `chains[&(a, b)]` from `kept[a]` to `kept[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suppressed {
    pub graph: Graph,
    pub kept: Vec<usize>,
    pub chains: BTreeMap<(usize, usize), Vec<usize>>,
}

pub fn suppress_degree_two(g: &Graph) -> Result<Suppressed> {
    for comp in g.components() {
        if comp.iter().all(|&v| g.degree(v) == 2) {
            return Err(Error::Structural {
                message: "component is a bare cycle".into(),
                vertices: comp,
            });
        }
    }
    let kept: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) != 2).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut chains: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &a in &kept {
        for &first in g.neighbors(a) {
            let mut chain = vec![a, first];
            let mut prev = a;
            let mut cur = first;
            while g.degree(cur) == 2 {
                let next = if g.neighbors(cur)[0] == prev {
                    g.neighbors(cur)[1]
                } else {
                    g.neighbors(cur)[0]
                };
                prev = cur;
                cur = next;
                chain.push(cur);
            }
            let b = cur;
            if b == a {
                return Err(Error::Structural {
                    message: "suppression would create a loop".into(),
                    vertices: chain,
                });
            }
            if a > b {
                continue;
            }
            let key = (index[a], index[b]);
            if let Some(existing) = chains.get(&key) {
                if *existing != chain {
                    let mut vertices = existing.clone();
                    vertices.extend(chain);
                    vertices.sort_unstable();
                    vertices.dedup();
                    return Err(Error::Structural {
                        message: "suppression would create parallel edges".into(),
                        vertices,
                    });
                }
            }
            chains.insert(key, chain);
        }
    }
    let edges: Vec<(usize, usize)> = chains.keys().copied().collect();
    let graph = Graph::from_edges(kept.len(), &edges)?;
    Ok(Suppressed { graph, kept, chains })
}

/// A pruned model: tree branch sets, one chosen cross edge per adjacent pair,
/// and the carrier subgraph made of the tree edges and chosen cross edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalModel {
    pub model: MinorModel,
    pub carrier_edges: Vec<(usize, usize)>,
}

impl MinimalModel {
    /// The carrier on the host's vertex ids (vertices outside it isolated).
    pub fn carrier(&self, host_n: usize) -> Graph {
        Graph::from_edges(host_n, &self.carrier_edges).expect("carrier edges are host edges")
    }
}

pub fn minimal_model(h: &Graph, x: &Graph) -> Result<Option<MinimalModel>> {
    let Some(model) = contains_minor(h, x)? else {
        return Ok(None);
    };
    let mut owner = vec![usize::MAX; h.n()];
    for (z, set) in model.branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = z;
        }
    }
    // First host edge, in sorted order, between each adjacent pair of branch sets.
    let mut cross: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (a, b) in h.edges() {
        let (za, zb) = (owner[a], owner[b]);
        if za == usize::MAX || zb == usize::MAX || za == zb || !x.has_edge(za, zb) {
            continue;
        }
        cross.entry((za.min(zb), za.max(zb))).or_insert((a, b));
    }
    let mut terminal = vec![false; h.n()];
    for &(a, b) in cross.values() {
        terminal[a] = true;
        terminal[b] = true;
    }
    let mut carrier_edges: Vec<(usize, usize)> = cross.values().copied().collect();
    let mut branch_sets = Vec::with_capacity(x.n());
    for set in &model.branch_sets {
        let (kept, tree) = steiner_tree(h, set, &terminal);
        carrier_edges.extend(tree);
        branch_sets.push(kept);
    }
    carrier_edges.sort_unstable();
    Ok(Some(MinimalModel {
        model: MinorModel { branch_sets },
        carrier_edges,
    }))
}

/// BFS spanning tree of `h[set]` with non-terminal leaves pruned repeatedly.
fn steiner_tree(h: &Graph, set: &[usize], terminal: &[bool]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let in_set: std::collections::HashSet<usize> = set.iter().copied().collect();
    let root = set.iter().copied().find(|&v| terminal[v]).unwrap_or(set[0]);
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    parent.insert(root, root);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in h.neighbors(u) {
            if in_set.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let mut children: BTreeMap<usize, usize> = parent.keys().map(|&v| (v, 0)).collect();
    for (&v, &p) in &parent {
        if v != p {
            *children.get_mut(&p).unwrap() += 1;
        }
    }
    let mut alive: BTreeMap<usize, bool> = parent.keys().map(|&v| (v, true)).collect();
    let mut leaves: Vec<usize> = children
        .iter()
        .filter(|&(&v, &c)| c == 0 && v != root && !terminal[v])
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = leaves.pop() {
        alive.insert(v, false);
        let p = parent[&v];
        let c = children.get_mut(&p).unwrap();
        *c -= 1;
        if *c == 0 && p != root && !terminal[p] {
            leaves.push(p);
        }
    }
    let kept: Vec<usize> = alive.iter().filter(|&(_, &a)| a).map(|(&v, _)| v).collect();
    let tree = kept
        .iter()
        .filter(|&&v| v != root)
        .map(|&v| {
            let p = parent[&v];
            (v.min(p), v.max(p))
        })
        .collect();
    (kept, tree)
}

/// `Y` with minimum degree at least 3, certified by `Y ⊴ H` and `X ≼ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopMinorWitness {
    pub y: Graph,
    pub y_in_h: TopologicalEmbedding,
    pub x_in_y: MinorModel,
    pub model: MinimalModel,
}

pub fn minor_to_topminor_witness(h: &Graph, x: &Graph) -> Result<Option<TopMinorWitness>> {
    if x.n() == 0 || x.min_degree() < 3 {
        return Err(Error::InvalidParameter("pattern needs minimum degree at least 3".into()));
    }
    let Some(model) = minimal_model(h, x)? else {
        return Ok(None);
    };
    let carrier_vertices: Vec<usize> = {
        let mut vs: Vec<usize> = model.model.branch_sets.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    };
    let mut local = vec![usize::MAX; h.n()];
    for (i, &v) in carrier_vertices.iter().enumerate() {
        local[v] = i;
    }
    let local_edges: Vec<(usize, usize)> = model.carrier_edges.iter().map(|&(a, b)| (local[a], local[b])).collect();
    let carrier = Graph::from_edges(carrier_vertices.len(), &local_edges)?;
    let sup = suppress_degree_two(&carrier)?;
    let to_host = |i: usize| carrier_vertices[i];
    let vertex_map: Vec<usize> = sup.kept.iter().map(|&i| to_host(i)).collect();
    let edge_paths = sup
        .chains
        .iter()
        .map(|(&(a, b), chain)| ((a, b), chain.iter().map(|&i| to_host(i)).collect()))
        .collect();
    let mut y_index = vec![usize::MAX; h.n()];
    for (i, &v) in vertex_map.iter().enumerate() {
        y_index[v] = i;
    }
    let branch_sets = model
        .model
        .branch_sets
        .iter()
        .map(|set| set.iter().filter_map(|&v| (y_index[v] != usize::MAX).then_some(y_index[v])).collect())
        .collect();
    Ok(Some(TopMinorWitness {
        y: sup.graph,
        y_in_h: TopologicalEmbedding { vertex_map, edge_paths },
        x_in_y: MinorModel { branch_sets },
        model,
    }))
}
