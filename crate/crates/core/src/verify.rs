//! Certificate validation.
//!
//! Nothing in this module calls into the search engines: each check works
//! directly from the definitions, using only adjacency queries on the host.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::containment::{Embedding, MinorModel, StarWitness, TopologicalEmbedding};
use crate::graph::Graph;
use crate::io::GraphDoc;

pub type Check = std::result::Result<(), String>;

fn distinct(vs: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = HashSet::new();
    vs.into_iter().all(|v| seen.insert(v))
}

fn walk_ok(host: &Graph, walk: &[usize]) -> Check {
    if walk.is_empty() {
        return Err("empty path".into());
    }
    if let Some(&v) = walk.iter().find(|&&v| v >= host.n()) {
        return Err(format!("vertex {v} not in host"));
    }
    if !distinct(walk.iter().copied()) {
        return Err(format!("path {walk:?} repeats a vertex"));
    }
    for w in walk.windows(2) {
        if !host.has_edge(w[0], w[1]) {
            return Err(format!("{}-{} is not a host edge", w[0], w[1]));
        }
    }
    Ok(())
}

/// A copy of `T(legs)` at `w.centre`: legs are paths from the centre of the
/// required lengths, pairwise disjoint apart from the centre.
pub fn check_star(host: &Graph, legs: &[usize], w: &StarWitness) -> Check {
    let mut sorted = legs.to_vec();
    sorted.sort_unstable();
    if w.legs.len() != sorted.len() {
        return Err(format!("{} legs, expected {}", w.legs.len(), sorted.len()));
    }
    let mut lens: Vec<usize> = w.legs.iter().map(|l| l.len().saturating_sub(1)).collect();
    lens.sort_unstable();
    if lens != sorted {
        return Err(format!("leg lengths {lens:?}, expected {sorted:?}"));
    }
    for leg in &w.legs {
        walk_ok(host, leg)?;
        if leg[0] != w.centre {
            return Err("leg does not start at the centre".into());
        }
    }
    let all = std::iter::once(w.centre).chain(w.legs.iter().flat_map(|l| l[1..].iter().copied()));
    if !distinct(all) {
        return Err("legs intersect".into());
    }
    Ok(())
}

fn colors_match(host_colors: Option<&[u64]>, pattern_colors: Option<&[u64]>, map: &[usize]) -> Check {
    if let (Some(hc), Some(pc)) = (host_colors, pattern_colors) {
        for (z, &x) in map.iter().enumerate() {
            if hc[x] != pc[z] {
                return Err(format!("vertex {z} has colour {} but its image {x} has {}", pc[z], hc[x]));
            }
        }
    }
    Ok(())
}

fn vertex_map_ok(host: &Graph, pattern: &Graph, map: &[usize]) -> Check {
    if map.len() != pattern.n() {
        return Err(format!("vertex map covers {} of {} vertices", map.len(), pattern.n()));
    }
    if let Some(&x) = map.iter().find(|&&x| x >= host.n()) {
        return Err(format!("image {x} not in host"));
    }
    if !distinct(map.iter().copied()) {
        return Err("vertex map is not injective".into());
    }
    Ok(())
}

pub fn check_embedding(
    host: &Graph,
    pattern: &Graph,
    emb: &Embedding,
    host_colors: Option<&[u64]>,
    pattern_colors: Option<&[u64]>,
) -> Check {
    vertex_map_ok(host, pattern, &emb.vertex_map)?;
    for (u, v) in pattern.edges() {
        if !host.has_edge(emb.vertex_map[u], emb.vertex_map[v]) {
            return Err(format!("pattern edge {u}-{v} is not preserved"));
        }
    }
    colors_match(host_colors, pattern_colors, &emb.vertex_map)
}

/// Topological embedding: injective map; one path per pattern edge between the
/// images; inner vertices avoid the image and all other paths. Colours are
/// checked on branch vertices only.
pub fn check_topological(
    host: &Graph,
    pattern: &Graph,
    emb: &TopologicalEmbedding,
    host_colors: Option<&[u64]>,
    pattern_colors: Option<&[u64]>,
) -> Check {
    let map = &emb.vertex_map;
    vertex_map_ok(host, pattern, map)?;
    let wanted: BTreeSet<(usize, usize)> = pattern.edges().collect();
    let given: BTreeSet<(usize, usize)> = emb
        .edge_paths
        .iter()
        .map(|&((u, v), _)| (u.min(v), u.max(v)))
        .collect();
    if given != wanted || emb.edge_paths.len() != wanted.len() {
        return Err("edge paths do not match the pattern edges one to one".into());
    }
    let image: HashSet<usize> = map.iter().copied().collect();
    let mut inner_seen = HashSet::new();
    for &((u, v), ref p) in &emb.edge_paths {
        walk_ok(host, p)?;
        if p.len() < 2 {
            return Err(format!("path for {u}-{v} is trivial"));
        }
        let (a, b) = (p[0], p[p.len() - 1]);
        if !((a == map[u] && b == map[v]) || (a == map[v] && b == map[u])) {
            return Err(format!("path for {u}-{v} has wrong ends"));
        }
        for &x in &p[1..p.len() - 1] {
            if image.contains(&x) {
                return Err(format!("path for {u}-{v} passes branch vertex {x}"));
            }
            if !inner_seen.insert(x) {
                return Err(format!("inner vertex {x} shared by two paths"));
            }
        }
    }
    colors_match(host_colors, pattern_colors, map)
}

fn connected_within(host: &Graph, set: &[usize]) -> bool {
    let members: HashSet<usize> = set.iter().copied().collect();
    let Some(&s) = set.first() else { return false };
    let mut seen = HashSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in host.neighbors(u) {
            if members.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == members.len()
}

/// Minor model: disjoint non-empty connected branch sets with a cross edge for
/// every pattern edge. With `exact`, non-adjacent pattern vertices must have no
/// cross edge either.
pub fn check_minor(host: &Graph, pattern: &Graph, model: &MinorModel, exact: bool) -> Check {
    let sets = &model.branch_sets;
    if sets.len() != pattern.n() {
        return Err(format!("{} branch sets for {} pattern vertices", sets.len(), pattern.n()));
    }
    let mut owner = vec![usize::MAX; host.n()];
    for (z, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("branch set {z} is empty"));
        }
        for &x in set {
            if x >= host.n() {
                return Err(format!("vertex {x} not in host"));
            }
            if owner[x] != usize::MAX {
                return Err(format!("vertex {x} in two branch sets"));
            }
            owner[x] = z;
        }
        if !connected_within(host, set) {
            return Err(format!("branch set {z} is not connected"));
        }
    }
    let mut linked = HashSet::new();
    for (a, b) in host.edges() {
        let (za, zb) = (owner[a], owner[b]);
        if za != usize::MAX && zb != usize::MAX && za != zb {
            linked.insert((za.min(zb), za.max(zb)));
        }
    }
    for (u, v) in pattern.edges() {
        if !linked.contains(&(u, v)) {
            return Err(format!("no edge between branch sets {u} and {v}"));
        }
    }
    if exact {
        if let Some(&(u, v)) = linked.iter().find(|&&(u, v)| !pattern.has_edge(u, v)) {
            return Err(format!("branch sets {u} and {v} are joined but {u}{v} is not a pattern edge"));
        }
    }
    Ok(())
}

/// Internally disjoint `u`–`v` paths.
pub fn check_path_family(host: &Graph, u: usize, v: usize, paths: &[Vec<usize>]) -> Check {
    let mut inner = HashSet::new();
    for p in paths {
        walk_ok(host, p)?;
        if p.len() < 2 || p[0] != u || p[p.len() - 1] != v {
            return Err(format!("path {p:?} does not run from {u} to {v}"));
        }
        for &x in &p[1..p.len() - 1] {
            if !inner.insert(x) {
                return Err(format!("inner vertex {x} shared"));
            }
        }
    }
    if !distinct(paths.iter().filter(|p| p.len() == 2).map(|_| 0)) {
        return Err("direct edge used twice".into());
    }
    Ok(())
}

/// A cycle given as a vertex sequence (closing edge implied) of length at least `min_len`.
pub fn check_cycle(host: &Graph, cycle: &[usize], min_len: usize) -> Check {
    walk_ok(host, cycle)?;
    if cycle.len() < 3 {
        return Err("a cycle needs at least 3 vertices".into());
    }
    if !host.has_edge(cycle[0], cycle[cycle.len() - 1]) {
        return Err("cycle is not closed".into());
    }
    if cycle.len() < min_len {
        return Err(format!("cycle length {} < {min_len}", cycle.len()));
    }
    Ok(())
}

/// Block tree: every edge in exactly one block, blocks connected without a
/// cutvertex of their own, cutvertices exactly the vertices in two or more
/// blocks, and the incidence graph a forest.
pub fn check_block_tree(host: &Graph, cutvertices: &[usize], blocks: &[Vec<usize>]) -> Check {
    let sets: Vec<HashSet<usize>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    for (u, v) in host.edges() {
        let c = sets.iter().filter(|s| s.contains(&u) && s.contains(&v)).count();
        if c != 1 {
            return Err(format!("edge {u}-{v} lies in {c} blocks"));
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        if !connected_within(host, b) {
            return Err(format!("block {i} is not connected"));
        }
        if b.len() >= 3 {
            for &x in b {
                let rest: Vec<usize> = b.iter().copied().filter(|&y| y != x).collect();
                if !connected_within(host, &rest) {
                    return Err(format!("block {i} has cutvertex {x}"));
                }
            }
        }
    }
    let mut count = vec![0usize; host.n()];
    for s in &sets {
        for &x in s {
            count[x] += 1;
        }
    }
    let expected: BTreeSet<usize> = (0..host.n()).filter(|&x| count[x] >= 2).collect();
    let given: BTreeSet<usize> = cutvertices.iter().copied().collect();
    if expected != given {
        return Err(format!("cutvertices {given:?} differ from shared vertices {expected:?}"));
    }
    // Incidence graph is a forest iff |E| = |V| - #components.
    let inc_edges: usize = sets.iter().map(|s| s.iter().filter(|x| count[**x] >= 2).count()).sum();
    let nodes = blocks.len() + given.len();
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let cut_index: std::collections::HashMap<usize, usize> =
        given.iter().enumerate().map(|(i, &c)| (c, blocks.len() + i)).collect();
    for (i, s) in sets.iter().enumerate() {
        for x in s {
            if let Some(&j) = cut_index.get(x) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    return Err("block incidence graph has a cycle".into());
                }
                parent[a] = b;
            }
        }
    }
    let _ = inc_edges;
    Ok(())
}

/// Self-contained certificate documents, as emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateDoc {
    Star {
        host: GraphDoc,
        legs: Vec<usize>,
        witness: StarWitness,
    },
    Subgraph {
        host: GraphDoc,
        pattern: GraphDoc,
        vertex_map: Vec<[usize; 2]>,
    },
    Topological {
        host: GraphDoc,
        pattern: GraphDoc,
        vertex_map: Vec<[usize; 2]>,
        edge_paths: Vec<Vec<usize>>,
    },
    Minor {
        host: GraphDoc,
        pattern: GraphDoc,
        branch_sets: Vec<Vec<usize>>,
        #[serde(default)]
        exact: bool,
    },
    PathFamily {
        host: GraphDoc,
        u: usize,
        v: usize,
        paths: Vec<Vec<usize>>,
    },
    Cycle {
        host: GraphDoc,
        cycle: Vec<usize>,
        min_length: usize,
    },
    BlockTree {
        host: GraphDoc,
        cutvertices: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    },
    Decomposition {
        host: GraphDoc,
        legs: Vec<usize>,
        #[serde(default)]
        relaxed_m: Option<usize>,
        core: Vec<usize>,
        parts: Vec<(usize, Vec<usize>)>,
    },
}

fn pairs(map: &[usize]) -> Vec<[usize; 2]> {
    map.iter().enumerate().map(|(i, &x)| [i, x]).collect()
}

fn unpairs(n: usize, pairs: &[[usize; 2]]) -> std::result::Result<Vec<usize>, String> {
    let mut map = vec![usize::MAX; n];
    for &[i, x] in pairs {
        if i >= n {
            return Err(format!("vertex map mentions unknown pattern vertex {i}"));
        }
        map[i] = x;
    }
    if map.contains(&usize::MAX) {
        return Err("vertex map is partial".into());
    }
    Ok(map)
}

impl CertificateDoc {
    pub fn star(host: &Graph, legs: &[usize], witness: &StarWitness) -> Self {
        CertificateDoc::Star {
            host: GraphDoc::from_graph(host),
            legs: legs.to_vec(),
            witness: witness.clone(),
        }
    }

    pub fn subgraph(host: GraphDoc, pattern: GraphDoc, emb: &Embedding) -> Self {
        CertificateDoc::Subgraph {
            host,
            pattern,
            vertex_map: pairs(&emb.vertex_map),
        }
    }

    pub fn topological(host: GraphDoc, pattern: GraphDoc, emb: &TopologicalEmbedding) -> Self {
        CertificateDoc::Topological {
            host,
            pattern,
            vertex_map: pairs(&emb.vertex_map),
            edge_paths: emb.edge_paths.iter().map(|(_, p)| p.clone()).collect(),
        }
    }

    pub fn minor(host: &Graph, pattern: &Graph, model: &MinorModel, exact: bool) -> Self {
        CertificateDoc::Minor {
            host: GraphDoc::from_graph(host),
            pattern: GraphDoc::from_graph(pattern),
            branch_sets: model.branch_sets.clone(),
            exact,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CertificateDoc::Star { .. } => "star",
            CertificateDoc::Subgraph { .. } => "subgraph",
            CertificateDoc::Topological { .. } => "topological",
            CertificateDoc::Minor { .. } => "minor",
            CertificateDoc::PathFamily { .. } => "path_family",
            CertificateDoc::Cycle { .. } => "cycle",
            CertificateDoc::BlockTree { .. } => "block_tree",
            CertificateDoc::Decomposition { .. } => "decomposition",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub kind: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
}

/// Validates a certificate document.
pub fn verify(doc: &CertificateDoc) -> VerifyReport {
    let outcome = verify_inner(doc);
    VerifyReport {
        kind: doc.kind().to_string(),
        valid: outcome.is_ok(),
        problem: outcome.err(),
    }
}

fn verify_inner(doc: &CertificateDoc) -> Check {
    let graph = |d: &GraphDoc| d.to_graph().map_err(|e| e.to_string());
    match doc {
        CertificateDoc::Star { host, legs, witness } => check_star(&graph(host)?, legs, witness),
        CertificateDoc::Subgraph { host, pattern, vertex_map } => {
            let (h, p) = (graph(host)?, graph(pattern)?);
            let emb = Embedding {
                vertex_map: unpairs(p.n(), vertex_map)?,
            };
            check_embedding(&h, &p, &emb, host.colors.as_deref(), pattern.colors.as_deref())
        }
        CertificateDoc::Topological {
            host,
            pattern,
            vertex_map,
            edge_paths,
        } => {
            let (h, p) = (graph(host)?, graph(pattern)?);
            let map = unpairs(p.n(), vertex_map)?;
            let mut paths = Vec::new();
            for path in edge_paths {
                let (Some(&a), Some(&b)) = (path.first(), path.last()) else {
                    return Err("empty edge path".into());
                };
                let u = map.iter().position(|&x| x == a).ok_or("path starts off the image")?;
                let v = map.iter().position(|&x| x == b).ok_or("path ends off the image")?;
                paths.push(((u.min(v), u.max(v)), path.clone()));
            }
            let emb = TopologicalEmbedding {
                vertex_map: map,
                edge_paths: paths,
            };
            check_topological(&h, &p, &emb, host.colors.as_deref(), pattern.colors.as_deref())
        }
        CertificateDoc::Minor {
            host,
            pattern,
            branch_sets,
            exact,
        } => check_minor(
            &graph(host)?,
            &graph(pattern)?,
            &MinorModel {
                branch_sets: branch_sets.clone(),
            },
            *exact,
        ),
        CertificateDoc::PathFamily { host, u, v, paths } => check_path_family(&graph(host)?, *u, *v, paths),
        CertificateDoc::Cycle { host, cycle, min_length } => check_cycle(&graph(host)?, cycle, *min_length),
        CertificateDoc::BlockTree {
            host,
            cutvertices,
            blocks,
        } => check_block_tree(&graph(host)?, cutvertices, blocks),
        CertificateDoc::Decomposition {
            host,
            legs,
            relaxed_m,
            core,
            parts,
        } => {
            let g = graph(host)?;
            let t = crate::containment::StarPattern::new(legs.clone()).map_err(|e| e.to_string())?;
            let d = crate::decomposition::Decomposition {
                core: core.clone(),
                parts: parts.clone(),
            };
            let params = crate::decomposition::DecompositionParams::new(&t, *relaxed_m);
            let report = crate::decomposition::verify_decomposition(&g, &params, &d);
            if report.all_satisfied() {
                Ok(())
            } else {
                Err(format!("decomposition properties failed: {:?}", report.failures()))
            }
        }
    }
}
