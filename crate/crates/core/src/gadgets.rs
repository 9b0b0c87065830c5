//! Adversarial T-free graphs built from a rooted regular tree by replacing
//! each tree edge with one of two pole gadgets.
//!
//! `H1(p, N)` is `N` internally disjoint paths of length `p` between the poles.
//! `H2(p)` is a clique on the poles and `p` further vertices, minus the pole
//! edge. The tree edge at level `l` gets `H1` or `H2` according to the
//! `l`-th letter of an alternating word over `{1, 2}`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::containment::{contains_star, StarPattern, StarWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;
use crate::io::GraphDoc;

pub const RELATION_HOST_LIMIT: usize = 64;
pub const RELATION_STEPS: usize = 5_000_000;

/// Parameters derived from `T(p_1, ..., p_k)`: `m_first_long` is the first
/// (1-based) leg longer than 1 and `n_branch = k - m_first_long + 1` counts the
/// long legs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeParams {
    pub t: StarPattern,
    pub m_first_long: usize,
    pub n_branch: usize,
    pub p_m: usize,
}

impl NegativeParams {
    pub fn new(t: &StarPattern) -> Result<Self> {
        let legs = t.legs();
        let k = legs.len();
        if k < 3 {
            return Err(Error::InvalidParameter(format!("need k >= 3, got k = {k}")));
        }
        if legs[k - 3] < 2 {
            return Err(Error::InvalidParameter(format!(
                "need p_{{k-2}} >= 2, got p_{} = {}",
                k - 2,
                legs[k - 3]
            )));
        }
        let m = legs.iter().position(|&p| p > 1).unwrap() + 1;
        Ok(NegativeParams {
            t: t.clone(),
            m_first_long: m,
            n_branch: k - m + 1,
            p_m: legs[m - 1],
        })
    }
}

/// A gadget with poles `x1 = 0` and `x2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleGraph {
    pub graph: Graph,
    pub x1: usize,
    pub x2: usize,
}

pub fn build_h1(p: usize, copies: usize) -> Result<PoleGraph> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("path length p = {p} must be at least 2")));
    }
    if copies == 0 {
        return Err(Error::InvalidParameter("need at least one path".into()));
    }
    let mut g = Graph::new(2 + copies * (p - 1));
    for i in 0..copies {
        let inner: Vec<usize> = (0..p - 1).map(|j| 2 + i * (p - 1) + j).collect();
        let mut prev = 0;
        for &x in &inner {
            g.add_edge(prev, x)?;
            prev = x;
        }
        g.add_edge(prev, 1)?;
    }
    Ok(PoleGraph { graph: g, x1: 0, x2: 1 })
}

pub fn build_h2(p: usize) -> Result<PoleGraph> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    let mut g = Graph::clique(p + 2);
    g.remove_edge(0, 1)?;
    Ok(PoleGraph { graph: g, x1: 0, x2: 1 })
}

/// All length-`len` prefixes of words built from the blocks `12` and `112`,
/// in lexicographic order.
pub fn alternating_sequences(len: usize) -> Vec<Vec<u8>> {
    fn grow(word: &mut Vec<u8>, len: usize, out: &mut Vec<Vec<u8>>) {
        if word.len() >= len {
            out.push(word[..len].to_vec());
            return;
        }
        for block in [&[1u8, 2][..], &[1, 1, 2]] {
            word.extend_from_slice(block);
            grow(word, len, out);
            word.truncate(word.len() - block.len());
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        grow(&mut Vec::new(), len, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Parses `"112"` into a word.
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(Error::InvalidParameter(format!("alpha letters must be 1 or 2, got {c:?}"))),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetType {
    H1,
    H2,
}

/// The gadget that replaced tree edge `edge = (parent, child)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetTag {
    pub edge: (usize, usize),
    #[serde(rename = "type")]
    pub kind: GadgetType,
    pub level: usize,
    /// Non-pole vertices of the copy in the realized graph.
    pub inner: Vec<usize>,
}

/// A truncation of `G_alpha`. Tree vertices are `0..tree.n()` in BFS order with
/// the root at 0 and keep their ids in `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    pub params: NegativeParams,
    pub alpha: Vec<u8>,
    pub depth: usize,
    pub copies: usize,
    pub tree: Graph,
    pub tree_depth: Vec<usize>,
    pub graph: Graph,
    pub gadgets: Vec<GadgetTag>,
}

pub fn build_g_alpha(t: &StarPattern, alpha: &[u8], depth: usize, copies: usize) -> Result<GadgetGraph> {
    let params = NegativeParams::new(t)?;
    if alpha.len() < depth {
        return Err(Error::InvalidParameter(format!(
            "alpha prefix has length {} < depth {depth}",
            alpha.len()
        )));
    }
    if let Some(&c) = alpha.iter().find(|&&c| c != 1 && c != 2) {
        return Err(Error::InvalidParameter(format!("alpha letter {c} is not 1 or 2")));
    }
    let h1 = build_h1(params.p_m, copies)?;
    let h2 = build_h2(params.p_m)?;
    let degree = params.n_branch - 1;

    let mut tree_depth = vec![0];
    let mut tree_edges = Vec::new();
    let mut frontier = vec![0];
    for d in 0..depth {
        let mut next = Vec::new();
        for &v in &frontier {
            let children = if d == 0 { degree } else { degree - 1 };
            for _ in 0..children {
                let c = tree_depth.len();
                tree_depth.push(d + 1);
                tree_edges.push((v, c));
                next.push(c);
            }
        }
        frontier = next;
    }
    let tree = Graph::from_edges(tree_depth.len(), &tree_edges)?;

    let mut graph = Graph::new(tree.n());
    let mut gadgets = Vec::with_capacity(tree_edges.len());
    for &(v, w) in &tree_edges {
        let level = tree_depth[v];
        let (kind, h) = if alpha[level] == 1 {
            (GadgetType::H1, &h1)
        } else {
            (GadgetType::H2, &h2)
        };
        let base = graph.n();
        let inner_count = h.graph.n() - 2;
        for _ in 0..inner_count {
            graph.add_vertex();
        }
        let place = |x: usize| match x {
            0 => v,
            1 => w,
            _ => base + x - 2,
        };
        for (a, b) in h.graph.edges() {
            graph.add_edge(place(a), place(b))?;
        }
        gadgets.push(GadgetTag {
            edge: (v, w),
            kind,
            level,
            inner: (base..base + inner_count).collect(),
        });
    }
    Ok(GadgetGraph {
        params,
        alpha: alpha.to_vec(),
        depth,
        copies,
        tree,
        tree_depth,
        graph,
        gadgets,
    })
}

impl GadgetGraph {
    /// Tree vertices at distance `i` from the root.
    pub fn level_set(&self, i: usize) -> Result<Vec<usize>> {
        if i > self.depth {
            return Err(Error::InvalidParameter(format!("level {i} exceeds depth {}", self.depth)));
        }
        Ok((0..self.tree.n()).filter(|&v| self.tree_depth[v] == i).collect())
    }

    /// A gadget is interior when neither pole sits on the truncation boundary.
    pub fn is_interior(&self, gadget: &GadgetTag) -> bool {
        self.tree_depth[gadget.edge.1] < self.depth
    }

    /// Edges of the realized graph inside gadget `g`.
    pub fn gadget_edges(&self, gadget: &GadgetTag) -> Vec<(usize, usize)> {
        let (v, w) = gadget.edge;
        let mut edges = Vec::new();
        for &x in &gadget.inner {
            for &y in self.graph.neighbors(x) {
                if (y == v || y == w || x < y) && !edges.contains(&(x.min(y), x.max(y))) {
                    edges.push((x.min(y), x.max(y)));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    pub fn summary(&self) -> GadgetSummary {
        GadgetSummary {
            star: self.params.t.legs().to_vec(),
            m_first_long: self.params.m_first_long,
            n_branch: self.params.n_branch,
            alpha: self.alpha.iter().map(|c| char::from(b'0' + c)).collect(),
            depth: self.depth,
            copies: self.copies,
            tree_vertices: self.tree.n(),
            graph: GraphDoc::from_graph(&self.graph),
            gadgets: self
                .gadgets
                .iter()
                .map(|g| GadgetEntry {
                    edge: [g.edge.0, g.edge.1],
                    kind: g.kind,
                    level: g.level,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetEntry {
    pub edge: [usize; 2],
    #[serde(rename = "type")]
    pub kind: GadgetType,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSummary {
    pub star: Vec<usize>,
    pub m_first_long: usize,
    pub n_branch: usize,
    pub alpha: String,
    pub depth: usize,
    #[serde(rename = "N")]
    pub copies: usize,
    pub tree_vertices: usize,
    pub graph: GraphDoc,
    pub gadgets: Vec<GadgetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim1Report {
    pub holds: bool,
    pub witness: Option<StarWitness>,
}

/// `G_alpha` should not contain `T`.
pub fn check_claim1(g: &GadgetGraph, t: &StarPattern) -> Claim1Report {
    let witness = contains_star(&g.graph, t);
    Claim1Report {
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSample {
    All,
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edge: (usize, usize),
    /// Id of the subdividing vertex in the subdivided graph.
    pub subdivider: usize,
    pub witness: Option<StarWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim2Report {
    pub checks: Vec<EdgeCheck>,
    pub skipped: Vec<(usize, usize)>,
    pub notice: Option<String>,
}

impl Claim2Report {
    pub fn failures(&self) -> Vec<(usize, usize)> {
        self.checks.iter().filter(|c| c.witness.is_none()).map(|c| c.edge).collect()
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_some())
    }
}

/// Subdivides sampled gadget edges once and looks for `T`. Edges of gadgets
/// touching the truncation boundary are skipped unless `boundary` is set.
pub fn check_claim2(g: &GadgetGraph, t: &StarPattern, sample: EdgeSample, boundary: bool) -> Claim2Report {
    let mut interior = Vec::new();
    let mut skipped = Vec::new();
    for gadget in &g.gadgets {
        let edges = g.gadget_edges(gadget);
        if boundary || g.is_interior(gadget) {
            interior.extend(edges);
        } else {
            skipped.extend(edges);
        }
    }
    if let EdgeSample::Random { count, seed } = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        interior.shuffle(&mut rng);
        interior.truncate(count);
        interior.sort_unstable();
    }
    let checks = interior
        .par_iter()
        .map(|&(u, v)| {
            let h = g.graph.subdivide_edge(u, v, 1).expect("gadget edge exists");
            EdgeCheck {
                edge: (u, v),
                subdivider: g.graph.n(),
                witness: contains_star(&h, t),
            }
        })
        .collect();
    let notice = (!skipped.is_empty()).then(|| {
        format!(
            "skipped {} edges of gadgets meeting depth {}: their deep pole lacks its gadgets",
            skipped.len(),
            g.depth
        )
    });
    Claim2Report {
        checks,
        skipped,
        notice,
    }
}

/// How `R(v, w)` was witnessed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum RelationWitness {
    /// `t` internally disjoint `v`-`w` paths of length `p`.
    H1 { paths: Vec<Vec<usize>> },
    /// `p` pairwise adjacent common neighbours of `v` and `w`.
    H2 { clique: Vec<usize> },
}

/// Looks for a copy of `H1(p, t)` or `H2(p)` with poles `v` and `w`.
pub fn relation_r(host: &Graph, v: usize, w: usize, p: usize, t: usize) -> Result<Option<RelationWitness>> {
    host.check_vertex(v)?;
    host.check_vertex(w)?;
    if v == w {
        return Err(Error::InvalidParameter("poles must be distinct".into()));
    }
    if p == 0 || t == 0 {
        return Err(Error::InvalidParameter("p and t must be positive".into()));
    }
    guard::check("relation_host", host.n(), RELATION_HOST_LIMIT)?;
    let mut steps = guard::limit("relation_steps", RELATION_STEPS);
    if p >= 2 {
        let mut used = vec![false; host.n()];
        used[v] = true;
        used[w] = true;
        let mut paths = Vec::new();
        if disjoint_paths(host, v, w, p, t, &mut used, &mut paths, 0, &mut steps)? {
            return Ok(Some(RelationWitness::H1 { paths }));
        }
    } else if t == 1 && host.has_edge(v, w) {
        return Ok(Some(RelationWitness::H1 { paths: vec![vec![v, w]] }));
    }
    let common: Vec<usize> = host
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&x| x != w && host.has_edge(x, w))
        .collect();
    let mut clique = Vec::new();
    if find_clique(host, &common, p, &mut clique, 0, &mut steps)? {
        return Ok(Some(RelationWitness::H2 { clique }));
    }
    Ok(None)
}

fn tick(steps: &mut usize) -> Result<()> {
    if *steps == 0 {
        return Err(Error::Resource("relation_steps exhausted".into()));
    }
    *steps -= 1;
    Ok(())
}

/// Adds paths whose first inner vertex is at least `min_first`, so each set
/// of paths is tried once.
#[allow(clippy::too_many_arguments)]
fn disjoint_paths(
    g: &Graph,
    v: usize,
    w: usize,
    p: usize,
    t: usize,
    used: &mut [bool],
    paths: &mut Vec<Vec<usize>>,
    min_first: usize,
    steps: &mut usize,
) -> Result<bool> {
    if paths.len() == t {
        return Ok(true);
    }
    for &first in g.neighbors(v) {
        if first < min_first || used[first] {
            continue;
        }
        let mut path = vec![v, first];
        used[first] = true;
        if extend_path(g, w, p, used, &mut path, &mut |path, used| {
            paths.push(path.to_vec());
            let done = disjoint_paths(g, v, w, p, t, used, paths, first + 1, steps)?;
            if !done {
                paths.pop();
            }
            Ok(done)
        })? {
            return Ok(true);
        }
        used[first] = false;
    }
    tick(steps)?;
    Ok(false)
}

/// Extends `path` to an exact-length path ending in `w`, calling `found` on
/// each completion until it returns `true`.
fn extend_path(
    g: &Graph,
    w: usize,
    p: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
    found: &mut dyn FnMut(&[usize], &mut [bool]) -> Result<bool>,
) -> Result<bool> {
    let x = *path.last().unwrap();
    if path.len() == p {
        if g.has_edge(x, w) {
            path.push(w);
            let ok = found(path, used)?;
            path.pop();
            return Ok(ok);
        }
        return Ok(false);
    }
    for &y in g.neighbors(x) {
        if used[y] {
            continue;
        }
        used[y] = true;
        path.push(y);
        let ok = extend_path(g, w, p, used, path, found)?;
        path.pop();
        used[y] = false;
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

fn find_clique(g: &Graph, cand: &[usize], size: usize, clique: &mut Vec<usize>, from: usize, steps: &mut usize) -> Result<bool> {
    if clique.len() == size {
        return Ok(true);
    }
    for i in from..cand.len() {
        tick(steps)?;
        let x = cand[i];
        if clique.iter().all(|&c| g.has_edge(c, x)) {
            clique.push(x);
            if find_clique(g, cand, size, clique, i + 1, steps)? {
                return Ok(true);
            }
            clique.pop();
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::local_connectivity;

    fn star(s: &str) -> StarPattern {
        StarPattern::parse(s).unwrap()
    }

    #[test]
    fn gadget_sizes() {
        let h = build_h1(2, 3).unwrap();
        assert_eq!((h.graph.n(), h.graph.edge_count()), (5, 6));
        let h = build_h1(3, 2).unwrap();
        assert_eq!((h.graph.n(), h.graph.edge_count()), (6, 6));
        assert_eq!(local_connectivity(&build_h1(3, 4).unwrap().graph, 0, 1, usize::MAX).unwrap(), 4);
        assert!(build_h1(1, 3).is_err());
        let h = build_h2(2).unwrap();
        assert_eq!((h.graph.n(), h.graph.edge_count()), (4, 5));
        let h = build_h2(1).unwrap();
        assert_eq!((h.graph.n(), h.graph.edge_count()), (3, 2));
        assert!(!h.graph.has_edge(0, 1));
    }

    #[test]
    fn alternating_words() {
        assert_eq!(alternating_sequences(1), vec![vec![1]]);
        assert_eq!(alternating_sequences(3), vec![vec![1, 1, 2], vec![1, 2, 1]]);
        assert_eq!(
            alternating_sequences(4),
            vec![vec![1, 1, 2, 1], vec![1, 2, 1, 1], vec![1, 2, 1, 2]]
        );
        for w in alternating_sequences(9) {
            let s: String = w.iter().map(|c| char::from(b'0' + c)).collect();
            assert!(!s.contains("22") && !s.contains("111"));
        }
    }

    #[test]
    fn params() {
        let p = NegativeParams::new(&star("1,2,2,3")).unwrap();
        assert_eq!((p.m_first_long, p.n_branch, p.p_m), (2, 3, 2));
        assert!(NegativeParams::new(&star("1,1,2,2")).is_err());
        assert!(NegativeParams::new(&star("2,2")).is_err());
    }

    #[test]
    fn two_level_instance() {
        let t = star("2,2,2,2");
        let g = build_g_alpha(&t, &[1, 1, 2], 2, 5).unwrap();
        assert_eq!(g.graph.n(), 55);
        assert_eq!((g.tree.n(), g.tree.edge_count()), (10, 9));
        assert!(g.gadgets.iter().all(|x| x.kind == GadgetType::H1));
        let sizes: Vec<usize> = (0..=2).map(|i| g.level_set(i).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        assert_eq!(g.level_set(0).unwrap(), vec![0]);
        assert!(g.level_set(3).is_err());
        assert!(check_claim1(&g, &t).holds);
        assert!(!check_claim1(&g, &StarPattern::star(3)).holds);
        let c2 = check_claim2(&g, &t, EdgeSample::All, false);
        assert_eq!(c2.checks.len(), 30);
        assert!(c2.holds(), "{:?}", c2.failures());
        assert!(c2.notice.is_some());
        let some = check_claim2(&g, &t, EdgeSample::Random { count: 7, seed: 1 }, true);
        assert_eq!((some.checks.len(), some.skipped.len()), (7, 0));
        assert!(some.holds());
        let depth0 = build_g_alpha(&t, &[1], 0, 5).unwrap();
        assert_eq!(depth0.graph.n(), 1);
        assert!(check_claim1(&depth0, &t).holds);
    }

    #[test]
    fn relation() {
        let h1 = build_h1(2, 5).unwrap();
        assert!(matches!(relation_r(&h1.graph, 0, 1, 2, 5).unwrap(), Some(RelationWitness::H1 { paths }) if paths.len() == 5));
        let h2 = build_h2(2).unwrap();
        assert!(matches!(relation_r(&h2.graph, 0, 1, 2, 5).unwrap(), Some(RelationWitness::H2 { .. })));
        assert_eq!(relation_r(&Graph::cycle(6), 0, 3, 2, 2).unwrap(), None);
        assert!(relation_r(&Graph::path(70), 0, 3, 2, 2).is_err());
    }

    #[test]
    fn relation_on_tree_vertices() {
        let t = star("2,2,2");
        let g = build_g_alpha(&t, &[1, 2], 2, 3).unwrap();
        assert!(g.graph.n() <= RELATION_HOST_LIMIT);
        for gadget in &g.gadgets {
            let (a, b) = gadget.edge;
            assert!(relation_r(&g.graph, a, b, 2, 3).unwrap().is_some());
        }
        let kids = g.level_set(1).unwrap();
        assert_eq!(relation_r(&g.graph, kids[0], kids[1], 2, 3).unwrap(), None);
    }
}
