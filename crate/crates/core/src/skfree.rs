//! Finite prefixes of the ray-and-attachment graph that contains every
//! connected graph of maximum degree below `k` as a degree-preserving
//! topological minor.
//!
//! The prefix has rays `R_0, ..., R_{R-1}`, each a path whose vertices sit at
//! positions `1, ..., L+1`, and attachment vertices `v_1, v_2, ...`; `v_j` is
//! joined to position `j` of every ray in `f(j)` and carries colour `c(j)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::containment::TopologicalEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Alpha, ColoredGraph, Graph};

/// The table `j -> (f(j), c(j))`, indexed from 1 and grown on demand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceEnumeration {
    pub k: usize,
    pub locally_finite: bool,
    entries: Vec<(Vec<usize>, u64)>,
}

impl IncidenceEnumeration {
    pub fn new(k: usize, locally_finite: bool) -> Self {
        IncidenceEnumeration {
            k,
            locally_finite,
            entries: Vec::new(),
        }
    }

    /// The first five entries as drawn in the standard picture of the
    /// construction, all colour 0.
    pub fn five_entry_example() -> Self {
        let sets: [&[usize]; 5] = [&[0, 1], &[0, 2], &[0, 1], &[1], &[0, 1, 2]];
        IncidenceEnumeration {
            k: 4,
            locally_finite: false,
            entries: sets.iter().map(|s| (s.to_vec(), 0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(f(j), c(j))` for `j >= 1`.
    pub fn entry(&self, j: usize) -> Option<(&[usize], u64)> {
        j.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|(a, c)| (a.as_slice(), *c))
    }

    /// Appends `(A, c)` and returns its index.
    pub fn push(&mut self, mut set: Vec<usize>, color: u64) -> Result<usize> {
        set.sort_unstable();
        set.dedup();
        if !self.locally_finite && set.len() >= self.k {
            return Err(Error::InvalidParameter(format!(
                "incidence set of size {} needs fewer than k = {} elements",
                set.len(),
                self.k
            )));
        }
        self.entries.push((set, color));
        Ok(self.entries.len())
    }

    /// First index not in `used` with entry `(set, color)`.
    pub fn find(&self, set: &[usize], color: u64, used: &dyn Fn(usize) -> bool) -> Option<usize> {
        (1..=self.entries.len()).find(|&j| {
            let (a, c) = &self.entries[j - 1];
            a == set && *c == color && !used(j)
        })
    }
}

/// Where a vertex of the prefix lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefixVertex {
    Ray { ray: usize, pos: usize },
    Attach { j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkFreePrefix {
    pub k: usize,
    pub rays: usize,
    pub ray_length: usize,
    pub table: IncidenceEnumeration,
}

/// A realized (sub-)prefix: the coloured graph and the location of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realized {
    pub graph: ColoredGraph,
    pub labels: Vec<PrefixVertex>,
}

impl Realized {
    pub fn index(&self) -> HashMap<PrefixVertex, usize> {
        self.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect()
    }

    /// `"attachments"` block: `j -> f(j)` for the realized attachment vertices.
    pub fn attachments(&self, table: &IncidenceEnumeration) -> BTreeMap<usize, Vec<usize>> {
        self.labels
            .iter()
            .filter_map(|l| match *l {
                PrefixVertex::Attach { j } => table.entry(j).map(|(a, _)| (j, a.to_vec())),
                PrefixVertex::Ray { .. } => None,
            })
            .collect()
    }
}

pub fn build_prefix(k: usize, rays: usize, ray_length: usize, table: Option<IncidenceEnumeration>) -> Result<SkFreePrefix> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 3")));
    }
    if rays == 0 || ray_length == 0 {
        return Err(Error::InvalidParameter("need at least one ray of positive length".into()));
    }
    let mut table = table.unwrap_or_else(|| IncidenceEnumeration::new(k, false));
    if !table.locally_finite {
        if let Some((a, _)) = table.entries.iter().find(|(a, _)| a.len() >= k) {
            return Err(Error::InvalidParameter(format!("f(j) = {a:?} has at least k = {k} elements")));
        }
    }
    table.k = k;
    Ok(SkFreePrefix {
        k,
        rays,
        ray_length,
        table,
    })
}

impl SkFreePrefix {
    /// Attachment vertices present in the realization: those with an entry and
    /// a position on the rays.
    pub fn realized_attachments(&self) -> usize {
        self.table.len().min(self.ray_length + 1)
    }

    /// The full prefix. Rays come first (`ray * (L+1) + pos - 1`), then the
    /// attachment vertices in index order. Ray vertices have colour 0.
    pub fn realize(&self) -> Realized {
        let per_ray = self.ray_length + 1;
        let mut labels = Vec::new();
        for ray in 0..self.rays {
            for pos in 1..=per_ray {
                labels.push(PrefixVertex::Ray { ray, pos });
            }
        }
        let attach = self.realized_attachments();
        labels.extend((1..=attach).map(|j| PrefixVertex::Attach { j }));
        let mut g = Graph::new(labels.len());
        let mut colors = vec![0u64; labels.len()];
        for ray in 0..self.rays {
            for pos in 1..per_ray {
                g.add_edge(ray * per_ray + pos - 1, ray * per_ray + pos).expect("ray edge");
            }
        }
        for j in 1..=attach {
            let x = self.rays * per_ray + j - 1;
            let (set, c) = self.table.entry(j).expect("realized entry");
            colors[x] = c;
            for &ray in set.iter().filter(|&&r| r < self.rays) {
                g.add_edge(x, ray * per_ray + j - 1).expect("attachment edge");
            }
        }
        Realized {
            graph: ColoredGraph::new(g, Alpha::Omega, colors).expect("colours are valid"),
            labels,
        }
    }

    /// Appends one enumeration entry, lengthening the rays if needed.
    pub fn extend(&mut self, set: Vec<usize>, color: u64) -> Result<usize> {
        let j = self.table.push(set, color)?;
        let (a, _) = self.table.entry(j).unwrap();
        if let Some(&max) = a.iter().max() {
            self.rays = self.rays.max(max + 1);
        }
        self.ray_length = self.ray_length.max(j - 1);
        Ok(j)
    }
}

/// A degree-preserving topological embedding into the touched part of a prefix.
///
/// `host` is the sub-prefix made of the used attachment vertices and the ray
/// segments between them; `embedding` maps into `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkFreeEmbedding {
    /// Index `j` chosen for each vertex of the input.
    pub assignment: Vec<usize>,
    /// Sorted edges of the input; edge `i` is routed along ray `i`.
    pub edges: Vec<(usize, usize)>,
    pub host: Realized,
    pub embedding: TopologicalEmbedding,
}

impl SkFreeEmbedding {
    /// Rewrites the embedding into the ids of the full realization.
    pub fn to_full(&self, prefix: &SkFreePrefix) -> Result<TopologicalEmbedding> {
        let full = prefix.realize();
        let index = full.index();
        let map = |x: usize| {
            index.get(&self.host.labels[x]).copied().ok_or_else(|| {
                Error::Resource(format!("prefix does not realize {:?}", self.host.labels[x]))
            })
        };
        Ok(TopologicalEmbedding {
            vertex_map: self.embedding.vertex_map.iter().map(|&x| map(x)).collect::<Result<_>>()?,
            edge_paths: self
                .embedding
                .edge_paths
                .iter()
                .map(|(e, p)| Ok((*e, p.iter().map(|&x| map(x)).collect::<Result<Vec<_>>>()?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Incidence sets of the input's vertices with respect to its sorted edges.
fn incidence_sets(g: &Graph) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let edges = g.edge_list();
    let mut sets = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        sets[u].push(i);
        sets[v].push(i);
    }
    (edges, sets)
}

fn check_input(g: &ColoredGraph, k: usize, locally_finite: bool) -> Result<()> {
    let gr = &g.graph;
    if gr.n() < 3 {
        return Err(Error::precondition("graph needs at least 3 vertices"));
    }
    if !gr.is_connected() {
        return Err(Error::precondition_with("graph is not connected", &gr.components()));
    }
    if !locally_finite {
        if let Some(v) = (0..gr.n()).find(|&v| gr.degree(v) >= k) {
            let star: Vec<usize> = std::iter::once(v).chain(gr.neighbors(v).iter().copied().take(k)).collect();
            return Err(Error::precondition_with(format!("graph contains S_{k} at vertex {v}"), &star));
        }
    }
    Ok(())
}

/// `(R, L)`: rays and ray length needed to embed `g` starting from an empty table.
pub fn required_prefix(g: &ColoredGraph, k: usize) -> Result<(usize, usize)> {
    let mut prefix = build_prefix(k, 1, 1, None)?;
    let emb = embed_skfree(g, &mut prefix, true)?;
    Ok((emb.edges.len(), emb.assignment.iter().copied().max().unwrap_or(0)))
}

/// Embeds `g` into `prefix`, choosing for each vertex an unused index whose
/// entry is the vertex's incidence set and colour. With `auto_extend`, missing
/// entries are appended to the table and the rays grow as needed.
pub fn embed_skfree(g: &ColoredGraph, prefix: &mut SkFreePrefix, auto_extend: bool) -> Result<SkFreeEmbedding> {
    check_input(g, prefix.k, prefix.table.locally_finite)?;
    let (edges, sets) = incidence_sets(&g.graph);
    let n = g.graph.n();
    let mut used: Vec<bool> = vec![false; prefix.table.len() + 1];
    let mut assignment = vec![0usize; n];
    let mut missing = Vec::new();
    for v in 0..n {
        let color = g.color(v);
        let found = prefix.table.find(&sets[v], color, &|j| used.get(j).copied().unwrap_or(false));
        let j = match found {
            Some(j) => j,
            None if auto_extend => prefix.extend(sets[v].clone(), color)?,
            None => {
                missing.push(v);
                continue;
            }
        };
        if used.len() <= j {
            used.resize(j + 1, false);
        }
        used[j] = true;
        assignment[v] = j;
    }
    let need_rays = edges.len();
    let need_len = assignment.iter().copied().max().unwrap_or(1).saturating_sub(1);
    if auto_extend {
        prefix.rays = prefix.rays.max(need_rays);
        prefix.ray_length = prefix.ray_length.max(need_len);
    } else if !missing.is_empty() || prefix.rays < need_rays || prefix.ray_length < need_len {
        let mut replay = build_prefix(prefix.k, 1, 1, Some(IncidenceEnumeration::new(prefix.k, prefix.table.locally_finite)))?;
        let emb = embed_skfree(g, &mut replay, true)?;
        let l = emb.assignment.iter().copied().max().unwrap_or(0);
        return Err(Error::Resource(format!(
            "prefix too small: table lacks entries for vertices {missing:?}; required (R, L) = ({}, {l}) from an empty table",
            edges.len()
        )));
    }
    let distinct: std::collections::HashSet<usize> = assignment.iter().copied().collect();
    if distinct.len() != n {
        return Err(Error::InvalidGraph("two vertices received the same attachment index".into()));
    }

    // Touched sub-prefix: used attachments plus the ray segments between them.
    let mut labels: Vec<PrefixVertex> = Vec::new();
    let mut id: HashMap<PrefixVertex, usize> = HashMap::new();
    let mut intern = |l: PrefixVertex, labels: &mut Vec<PrefixVertex>| -> usize {
        *id.entry(l).or_insert_with(|| {
            labels.push(l);
            labels.len() - 1
        })
    };
    let vertex_map: Vec<usize> = assignment
        .iter()
        .map(|&j| intern(PrefixVertex::Attach { j }, &mut labels))
        .collect();
    let mut edge_list = Vec::new();
    let mut edge_paths = Vec::with_capacity(edges.len());
    for (ray, &(u, v)) in edges.iter().enumerate() {
        let (ju, jv) = (assignment[u], assignment[v]);
        let step: isize = if ju < jv { 1 } else { -1 };
        let mut path = vec![vertex_map[u]];
        let mut pos = ju as isize;
        loop {
            let x = intern(PrefixVertex::Ray { ray, pos: pos as usize }, &mut labels);
            path.push(x);
            if pos as usize == jv {
                break;
            }
            pos += step;
        }
        path.push(vertex_map[v]);
        for w in path.windows(2) {
            edge_list.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        edge_paths.push(((u, v), path));
    }
    let graph = Graph::from_edges(labels.len(), &edge_list)?;
    let colors: Vec<u64> = labels
        .iter()
        .map(|l| match *l {
            PrefixVertex::Attach { j } => prefix.table.entry(j).map(|(_, c)| c).unwrap_or(0),
            PrefixVertex::Ray { .. } => 0,
        })
        .collect();
    let host = Realized {
        graph: ColoredGraph::new(graph, Alpha::Omega, colors)?,
        labels,
    };
    Ok(SkFreeEmbedding {
        assignment,
        edges,
        host,
        embedding: TopologicalEmbedding { vertex_map, edge_paths },
    })
}
