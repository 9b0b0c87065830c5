//! Universal prefixes for graphs without a subdivided star `T` with `k >= 3`
//! legs and `p_{k-2} = 1`.
//!
//! The attached components come from a registry: a deduplicated, class-checked
//! list of connected 2-graphs with a single vertex of colour 1, grouped by the
//! degree `n` of that vertex. The registry stands in for a universal graph of
//! each class and only grows by admitting what is actually requested.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::containment::{contains_star, is_colored_isomorphic, StarPattern, StarWitness, TopologicalEmbedding};
use crate::decomposition::{decompose, DecomposeOutput, DecompositionParams};
use crate::error::{Error, Result};
use crate::graph::{Alpha, ColoredGraph, Graph};
use crate::io::GraphDoc;
use crate::longest_path;
use crate::skfree::{embed_skfree, SkFreeEmbedding, SkFreePrefix};

fn check_hypothesis(t: &StarPattern) -> Result<()> {
    let k = t.k();
    if k < 3 {
        return Err(Error::InvalidParameter(format!("{} has fewer than 3 legs", t.label())));
    }
    if t.legs()[k - 3] != 1 {
        return Err(Error::InvalidParameter(format!(
            "{} needs p_(k-2) = 1 but p_(k-2) = {}",
            t.label(),
            t.legs()[k - 3]
        )));
    }
    Ok(())
}

/// A connected 2-graph whose only vertex of colour 1 is `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rooted {
    pub graph: Graph,
    pub root: usize,
}

impl Rooted {
    pub fn colored(&self) -> ColoredGraph {
        let mut colors = vec![0; self.graph.n()];
        colors[self.root] = 1;
        ColoredGraph::new(self.graph.clone(), Alpha::Two, colors).expect("0/1 colours")
    }

    pub fn from_colored(g: &ColoredGraph) -> Result<Self> {
        let ones: Vec<usize> = (0..g.graph.n()).filter(|&v| g.color(v) == 1).collect();
        if ones.len() != 1 || g.colors().iter().any(|&c| c > 1) {
            return Err(Error::InvalidParameter(format!(
                "need exactly one vertex of colour 1 and all others 0, found colour-1 vertices {ones:?}"
            )));
        }
        if !g.graph.is_connected() {
            return Err(Error::InvalidParameter("component is not connected".into()));
        }
        Ok(Rooted {
            graph: g.graph.clone(),
            root: ones[0],
        })
    }

    /// `H̄`: a path of length `len` attached at the root.
    pub fn with_tail(&self, len: usize) -> Graph {
        let mut g = self.graph.clone();
        let mut prev = self.root;
        for _ in 0..len {
            let x = g.add_vertex();
            g.add_edge(prev, x).expect("tail edge");
            prev = x;
        }
        g
    }

    /// Isomorphism-invariant key used to bucket candidates before exact tests.
    fn key(&self) -> (usize, usize, usize, Vec<(usize, usize)>) {
        let dist = self.graph.distances(self.root);
        let mut profile: Vec<(usize, usize)> = (0..self.graph.n()).map(|v| (dist[v], self.graph.degree(v))).collect();
        profile.sort_unstable();
        (self.graph.n(), self.graph.edge_count(), self.graph.degree(self.root), profile)
    }
}

/// The forbidden 2-graphs. `x1` is listed explicitly; the path families and
/// stars are checked as predicates.
#[derive(Clone, Debug)]
pub struct ForbiddenSets {
    pub t: StarPattern,
    /// `8 p_k + 2m`.
    pub path_bound: usize,
    pub x1: Vec<Rooted>,
}

/// Connected rooted graphs on at most `max_n` vertices up to isomorphism fixing the root.
pub fn rooted_graphs(max_n: usize) -> Vec<Rooted> {
    let mut all = Vec::new();
    if max_n == 0 {
        return all;
    }
    let mut level = vec![Rooted {
        graph: Graph::new(1),
        root: 0,
    }];
    all.extend(level.iter().cloned());
    for s in 1..max_n {
        let mut buckets: HashMap<(usize, usize, usize, Vec<(usize, usize)>), Vec<Rooted>> = HashMap::new();
        let mut next = Vec::new();
        for h in &level {
            for mask in 1u32..1 << s {
                let mut g = h.graph.clone();
                let x = g.add_vertex();
                for u in 0..s {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, x).expect("new edge");
                    }
                }
                let cand = Rooted { graph: g, root: h.root };
                let bucket = buckets.entry(cand.key()).or_default();
                let cc = cand.colored();
                if bucket.iter().any(|b| is_colored_isomorphic(&b.colored(), &cc).is_some()) {
                    continue;
                }
                bucket.push(cand.clone());
                next.push(cand);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// A member of a forbidden family found in a 2-graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Violation {
    /// `T` appears once a path of length `p_k` is attached at the colour-1
    /// vertex; `vertices` induce the offending member.
    X1 { vertices: Vec<usize>, witness: StarWitness },
    /// A path of the forbidden length.
    X2 { path: Vec<usize> },
    /// A short path joining two colour-1 vertices through colour-0 vertices.
    X3 { path: Vec<usize> },
    /// The colour-1 vertex has degree above `n`.
    X4 { centre: usize, degree: usize, n: usize },
}

impl ForbiddenSets {
    /// Builds the sets, enumerating the first family explicitly.
    pub fn build(t: &StarPattern, relaxed_m: Option<usize>) -> Result<Self> {
        let mut f = ForbiddenSets::predicates(t, relaxed_m)?;
        f.x1 = rooted_graphs(t.vertex_count())
            .into_iter()
            .filter(|h| contains_star(&h.with_tail(t.longest()), t).is_some())
            .collect();
        Ok(f)
    }

    /// Same without the explicit list; the first family is then tested only
    /// through [`ForbiddenSets::x1_violation`].
    pub fn predicates(t: &StarPattern, relaxed_m: Option<usize>) -> Result<Self> {
        check_hypothesis(t)?;
        let params = DecompositionParams::new(t, relaxed_m);
        Ok(ForbiddenSets {
            t: t.clone(),
            path_bound: params.part_path_bound,
            x1: Vec::new(),
        })
    }

    /// `T` in `H̄`. Any copy restricted to `H` plus the root is a member of the
    /// first family contained in `H`.
    pub fn x1_violation(&self, h: &Rooted) -> Option<Violation> {
        let tail = h.with_tail(self.t.longest());
        let w = contains_star(&tail, &self.t)?;
        let mut vertices: Vec<usize> = std::iter::once(w.centre)
            .chain(w.legs.iter().flatten().copied())
            .chain(std::iter::once(h.root))
            .filter(|&x| x < h.graph.n())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        Some(Violation::X1 { vertices, witness: w })
    }

    pub fn x2_violation(&self, g: &Graph) -> Result<Option<Violation>> {
        let b = longest_path::bounds(g, self.path_bound)?;
        match b.decides(self.path_bound) {
            Some(true) => Ok(Some(Violation::X2 {
                path: b.witness[..=self.path_bound].to_vec(),
            })),
            Some(false) => Ok(None),
            None => Err(Error::Inconclusive(format!(
                "longest path in [{}, {}] against bound {}",
                b.lower, b.upper, self.path_bound
            ))),
        }
    }

    pub fn x3_violation(&self, g: &ColoredGraph) -> Option<Violation> {
        let ones: Vec<usize> = (0..g.graph.n()).filter(|&v| g.color(v) == 1).collect();
        for &s in &ones {
            let mut parent = vec![usize::MAX; g.graph.n()];
            parent[s] = s;
            let mut dist = vec![0usize; g.graph.n()];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.graph.neighbors(u) {
                    if parent[w] != usize::MAX {
                        continue;
                    }
                    parent[w] = u;
                    dist[w] = dist[u] + 1;
                    if g.color(w) == 1 {
                        if dist[w] < self.path_bound {
                            let mut path = vec![w];
                            let mut x = w;
                            while x != s {
                                x = parent[x];
                                path.push(x);
                            }
                            return Some(Violation::X3 { path });
                        }
                    } else {
                        queue.push_back(w);
                    }
                }
            }
        }
        None
    }

    pub fn x4_violation(&self, h: &Rooted, n: usize) -> Option<Violation> {
        let d = h.graph.degree(h.root);
        (d > n).then_some(Violation::X4 {
            centre: h.root,
            degree: d,
            n,
        })
    }

    /// First violation of the `n`-th class, checking the families in order.
    pub fn violation(&self, h: &Rooted, n: usize) -> Result<Option<Violation>> {
        if let Some(v) = self.x1_violation(h) {
            return Ok(Some(v));
        }
        if let Some(v) = self.x2_violation(&h.graph)? {
            return Ok(Some(v));
        }
        if let Some(v) = self.x3_violation(&h.colored()) {
            return Ok(Some(v));
        }
        Ok(self.x4_violation(h, n))
    }
}

/// One admitted component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub n: usize,
    pub index: usize,
    pub rooted: Rooted,
}

/// Outcome of an admission: where the input landed and how it maps there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admission {
    pub n: usize,
    pub index: usize,
    /// Image of each input vertex in the registered component.
    pub map: Vec<usize>,
    pub new: bool,
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub t: StarPattern,
    pub relaxed_m: Option<usize>,
    forbidden: ForbiddenSets,
    components: BTreeMap<usize, Vec<Component>>,
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    legs: Vec<usize>,
    #[serde(default)]
    relaxed_m: Option<usize>,
    components: Vec<IndexEntry>,
}

#[derive(Serialize, Deserialize)]
struct IndexEntry {
    n: usize,
    index: usize,
    file: String,
}

impl Registry {
    /// An empty registry whose entry 0 for each `n < k - 1` is the star `S_n`
    /// with its centre coloured 1 (when that star belongs to the class).
    pub fn new(t: &StarPattern, relaxed_m: Option<usize>) -> Result<Self> {
        let forbidden = ForbiddenSets::predicates(t, relaxed_m)?;
        let mut r = Registry {
            t: t.clone(),
            relaxed_m,
            forbidden,
            components: BTreeMap::new(),
        };
        for n in 0..t.k() {
            let star = Rooted {
                graph: Graph::from_edges(n + 1, &(1..=n).map(|i| (0, i)).collect::<Vec<_>>())?,
                root: 0,
            };
            if r.forbidden.violation(&star, n)?.is_none() {
                r.components.entry(n).or_default().push(Component { n, index: 0, rooted: star });
            }
        }
        Ok(r)
    }

    pub fn forbidden(&self) -> &ForbiddenSets {
        &self.forbidden
    }

    pub fn get(&self, n: usize, index: usize) -> Option<&Component> {
        self.components.get(&n).and_then(|c| c.get(index))
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Admits `g` into class `n` (the degree the colour-1 vertex must reach).
    /// The colour-1 vertex is padded with pendant colour-0 leaves up to degree
    /// `n`; the padded graph is class-checked and deduplicated.
    pub fn admit(&mut self, g: &Rooted, n: usize) -> Result<Admission> {
        if !g.graph.is_connected() {
            return Err(Error::InvalidParameter("component is not connected".into()));
        }
        let d = g.graph.degree(g.root);
        if d > n {
            let v = Violation::X4 {
                centre: g.root,
                degree: d,
                n,
            };
            return Err(Error::precondition_with("class violation", &v));
        }
        let mut padded = g.clone();
        for _ in d..n {
            let x = padded.graph.add_vertex();
            padded.graph.add_edge(padded.root, x)?;
        }
        if let Some(v) = self.forbidden.violation(&padded, n)? {
            return Err(Error::precondition_with("class violation", &v));
        }
        let key = padded.key();
        let pc = padded.colored();
        let list = self.components.entry(n).or_default();
        for c in list.iter() {
            if c.rooted.key() != key {
                continue;
            }
            if let Some(e) = is_colored_isomorphic(&pc, &c.rooted.colored()) {
                return Ok(Admission {
                    n,
                    index: c.index,
                    map: e.vertex_map[..g.graph.n()].to_vec(),
                    new: false,
                });
            }
        }
        let index = list.len();
        list.push(Component {
            n,
            index,
            rooted: padded,
        });
        Ok(Admission {
            n,
            index,
            map: (0..g.graph.n()).collect(),
            new: true,
        })
    }

    /// Writes `index.json` and one file per component into `dir`.
    pub fn save(&self, dir: &FsPath) -> Result<()> {
        let io = |e: std::io::Error| Error::InvalidParameter(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        let mut entries = Vec::new();
        for c in self.components() {
            let file = format!("n{}-{}.json", c.n, c.index);
            let doc = GraphDoc::from_colored(&c.rooted.colored());
            std::fs::write(dir.join(&file), serde_json::to_string(&doc).expect("serializes")).map_err(io)?;
            entries.push(IndexEntry {
                n: c.n,
                index: c.index,
                file,
            });
        }
        let index = IndexFile {
            legs: self.t.legs().to_vec(),
            relaxed_m: self.relaxed_m,
            components: entries,
        };
        std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index).expect("serializes")).map_err(io)
    }

    /// Loads a registry saved by [`Registry::save`]; every component is re-checked.
    pub fn load(dir: &FsPath) -> Result<Self> {
        let io = |e: std::io::Error| Error::InvalidParameter(format!("{}: {e}", dir.display()));
        let index: IndexFile = crate::io::parse_json(&std::fs::read(dir.join("index.json")).map_err(io)?)?;
        let t = StarPattern::new(index.legs)?;
        let mut r = Registry {
            t: t.clone(),
            relaxed_m: index.relaxed_m,
            forbidden: ForbiddenSets::predicates(&t, index.relaxed_m)?,
            components: BTreeMap::new(),
        };
        let mut entries = index.components;
        entries.sort_by_key(|e| (e.n, e.index));
        for e in entries {
            let doc: GraphDoc = crate::io::parse_json(&std::fs::read(dir.join(&e.file)).map_err(io)?)?;
            let cg = doc
                .to_colored()?
                .ok_or_else(|| Error::InvalidGraph(format!("{} has no colours", e.file)))?;
            let rooted = Rooted::from_colored(&cg)?;
            if let Some(v) = r.forbidden.violation(&rooted, e.n)? {
                return Err(Error::precondition_with(format!("{} violates the class", e.file), &v));
            }
            let list = r.components.entry(e.n).or_default();
            if e.index != list.len() {
                return Err(Error::InvalidGraph(format!("registry index has a gap before {}", e.file)));
            }
            list.push(Component {
                n: e.n,
                index: e.index,
                rooted,
            });
        }
        Ok(r)
    }
}

/// The assembled prefix: a core with a registered component glued at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarUniversalPrefix {
    pub graph: Graph,
    /// Vertices `0..core_size` are the core, with the same ids as in the core graph.
    pub core_size: usize,
    /// Per core vertex: `(n, c, first id of the glued component's other vertices)`.
    pub attachments: Vec<(usize, usize, usize)>,
}

impl StarUniversalPrefix {
    /// Id of vertex `x` of the component glued at core vertex `v`.
    pub fn component_vertex(&self, registry: &Registry, v: usize, x: usize) -> usize {
        let (n, c, offset) = self.attachments[v];
        let root = registry.get(n, c).expect("registered").rooted.root;
        match x.cmp(&root) {
            std::cmp::Ordering::Equal => v,
            std::cmp::Ordering::Less => offset + x,
            std::cmp::Ordering::Greater => offset + x - 1,
        }
    }
}

/// Glues `Γ^{n(v)}_{c(v)}` at every core vertex `v`, with `n(v) = k - d(v) - 1`
/// and `c(v)` the colour of `v`.
pub fn assemble(t: &StarPattern, core: &ColoredGraph, registry: &Registry) -> Result<StarUniversalPrefix> {
    let k = t.k();
    let g = &core.graph;
    let mut missing = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) >= k {
            return Err(Error::InvalidGraph(format!("core vertex {v} has degree {} >= k", g.degree(v))));
        }
        let n = k - g.degree(v) - 1;
        let c = core.color(v) as usize;
        if registry.get(n, c).is_none() {
            missing.push((v, n, c));
        }
    }
    if !missing.is_empty() {
        let demand: Vec<_> = missing
            .iter()
            .map(|&(v, n, c)| serde_json::json!({ "vertex": v, "n": n, "c": c }))
            .collect();
        return Err(Error::precondition_with("registry lacks components", &demand));
    }
    let mut out = g.clone();
    let mut attachments = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let n = k - g.degree(v) - 1;
        let c = core.color(v) as usize;
        let comp = &registry.get(n, c).unwrap().rooted;
        let offset = out.n();
        let id = |x: usize| match x.cmp(&comp.root) {
            std::cmp::Ordering::Equal => v,
            std::cmp::Ordering::Less => offset + x,
            std::cmp::Ordering::Greater => offset + x - 1,
        };
        for _ in 1..comp.graph.n() {
            out.add_vertex();
        }
        for (a, b) in comp.graph.edges() {
            out.add_edge(id(a), id(b))?;
        }
        attachments.push((n, c, offset));
    }
    Ok(StarUniversalPrefix {
        graph: out,
        core_size: g.n(),
        attachments,
    })
}

/// Per core vertex of the input: the values the construction requires to agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consistency {
    pub vertex: usize,
    pub n_part: usize,
    pub n_core: usize,
    pub c_part: usize,
    pub c_core: usize,
}

impl Consistency {
    pub fn holds(&self) -> bool {
        self.n_part == self.n_core && self.c_part == self.c_core
    }
}

#[derive(Clone, Debug)]
pub struct UniversalEmbedding {
    pub decomposition: DecomposeOutput,
    pub core_embedding: SkFreeEmbedding,
    pub prefix: StarUniversalPrefix,
    pub embedding: TopologicalEmbedding,
    pub consistency: Vec<Consistency>,
}

/// Shared state across embeddings: the component registry and the core prefix.
#[derive(Clone, Debug)]
pub struct UniversalContext {
    pub registry: Registry,
    pub core: SkFreePrefix,
}

impl UniversalContext {
    pub fn new(t: &StarPattern, relaxed_m: Option<usize>) -> Result<Self> {
        check_hypothesis(t)?;
        Ok(UniversalContext {
            registry: Registry::new(t, relaxed_m)?,
            core: crate::skfree::build_prefix(t.k(), 1, 1, None)?,
        })
    }
}

/// Topological embedding of a connected `T`-free graph with a long path into
/// an assembled prefix.
pub fn embed_universal(g: &Graph, ctx: &mut UniversalContext) -> Result<UniversalEmbedding> {
    let t = ctx.registry.t.clone();
    let k = t.k();
    let out = decompose(g, &t, ctx.registry.relaxed_m)?;
    let d = &out.decomposition;
    let core_graph = g.induced(&d.core);
    let mut core_index = vec![usize::MAX; g.n()];
    for (i, &v) in d.core.iter().enumerate() {
        core_index[v] = i;
    }

    // Register each part with its attachment coloured 1.
    let mut admissions = Vec::with_capacity(d.parts.len());
    let mut colors = vec![0u64; d.core.len()];
    for (v, part) in &d.parts {
        let local = part.binary_search(v).expect("part contains its attachment");
        let rooted = Rooted {
            graph: g.induced(part),
            root: local,
        };
        let n_prime = k - core_graph.degree(core_index[*v]) - 1;
        let adm = ctx.registry.admit(&rooted, n_prime)?;
        colors[core_index[*v]] = adm.index as u64;
        admissions.push(adm);
    }

    let core_colored = ColoredGraph::new(core_graph.clone(), Alpha::Omega, colors)?;
    let core_embedding = embed_skfree(&core_colored, &mut ctx.core, true)?;
    let host = &core_embedding.host.graph;
    let prefix = assemble(&t, host, &ctx.registry)?;

    let mut vertex_map = vec![usize::MAX; g.n()];
    let mut consistency = Vec::with_capacity(d.core.len());
    for ((v, part), adm) in d.parts.iter().zip(&admissions) {
        let ci = core_index[*v];
        let image = core_embedding.embedding.vertex_map[ci];
        let (n_core, c_core, _) = prefix.attachments[image];
        consistency.push(Consistency {
            vertex: *v,
            n_part: adm.n,
            n_core,
            c_part: adm.index,
            c_core,
        });
        for (i, &x) in part.iter().enumerate() {
            vertex_map[x] = if x == *v {
                image
            } else {
                prefix.component_vertex(&ctx.registry, image, adm.map[i])
            };
        }
    }
    let mut edge_paths = Vec::with_capacity(g.edge_count());
    let core_paths: HashMap<(usize, usize), &Vec<usize>> =
        core_embedding.embedding.edge_paths.iter().map(|(e, p)| (*e, p)).collect();
    for (a, b) in g.edges() {
        let (ia, ib) = (core_index[a], core_index[b]);
        let path = if ia != usize::MAX && ib != usize::MAX {
            core_paths[&(ia.min(ib), ia.max(ib))].clone()
        } else {
            vec![vertex_map[a], vertex_map[b]]
        };
        let path = if path[0] == vertex_map[a] {
            path
        } else {
            path.into_iter().rev().collect()
        };
        edge_paths.push(((a, b), path));
    }
    Ok(UniversalEmbedding {
        decomposition: out,
        core_embedding,
        prefix,
        embedding: TopologicalEmbedding { vertex_map, edge_paths },
        consistency,
    })
}

/// Registry for graphs without `T` and without a path of length `4 p_k m`.
#[derive(Clone, Debug)]
pub struct ShortRegistry {
    pub t: StarPattern,
    pub threshold: usize,
    components: Vec<Graph>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortEmbedding {
    /// Registry index of each component of the input, in component order.
    pub components: Vec<usize>,
    /// Map into the disjoint union of the registry's components (see [`ShortRegistry::realize`]).
    pub vertex_map: Vec<usize>,
}

impl ShortRegistry {
    pub fn new(t: &StarPattern, relaxed_m: Option<usize>) -> Result<Self> {
        check_hypothesis(t)?;
        Ok(ShortRegistry {
            t: t.clone(),
            threshold: DecompositionParams::new(t, relaxed_m).long_path_threshold,
            components: Vec::new(),
        })
    }

    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    /// Disjoint union of all registered components, in index order.
    pub fn realize(&self) -> Graph {
        self.components.iter().fold(Graph::new(0), |acc, c| acc.disjoint_union(c))
    }

    fn offset(&self, index: usize) -> usize {
        self.components[..index].iter().map(Graph::n).sum()
    }

    pub fn admit(&mut self, g: &Graph) -> Result<(usize, Vec<usize>)> {
        if !g.is_connected() {
            return Err(Error::InvalidParameter("component is not connected".into()));
        }
        if let Some(w) = contains_star(g, &self.t) {
            return Err(Error::precondition_with(format!("component contains {}", self.t.label()), &w));
        }
        let b = longest_path::bounds(g, self.threshold)?;
        match b.decides(self.threshold) {
            Some(false) => {}
            Some(true) => {
                return Err(Error::precondition_with(
                    format!("component has a path of length {}", self.threshold),
                    &b.witness[..=self.threshold],
                ))
            }
            None => return Err(Error::Inconclusive("could not bound the longest path".into())),
        }
        let cg = ColoredGraph::uniform(g.clone(), Alpha::Two, 0)?;
        for (i, c) in self.components.iter().enumerate() {
            if c.n() != g.n() || c.edge_count() != g.edge_count() {
                continue;
            }
            let cc = ColoredGraph::uniform(c.clone(), Alpha::Two, 0)?;
            if let Some(e) = is_colored_isomorphic(&cg, &cc) {
                return Ok((i, e.vertex_map));
            }
        }
        self.components.push(g.clone());
        Ok((self.components.len() - 1, (0..g.n()).collect()))
    }
}

/// Admits every component of `g` and returns the identity-style embedding into
/// the registry's disjoint union.
pub fn embed_short(g: &Graph, registry: &mut ShortRegistry) -> Result<ShortEmbedding> {
    let mut components = Vec::new();
    let mut placed = Vec::new();
    for comp in g.components() {
        let (index, map) = registry.admit(&g.induced(&comp))?;
        components.push(index);
        placed.push((comp, index, map));
    }
    let mut vertex_map = vec![0; g.n()];
    for (comp, index, map) in placed {
        let offset = registry.offset(index);
        for (i, &v) in comp.iter().enumerate() {
            vertex_map[v] = offset + map[i];
        }
    }
    Ok(ShortEmbedding { components, vertex_map })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialKind {
    /// Every cycle has length at least `3(k+1)`.
    CycleGirth,
    /// Branch vertices are at distance `k+1`.
    BranchDistance,
}

/// `K^n` with every edge subdivided `k` times.
pub fn trivial_universal_prefix(_kind: TrivialKind, k: usize, n: usize) -> Result<Graph> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be positive".into()));
    }
    Ok(Graph::clique(n).subdivide_all(k))
}

/// Vertices of the assembled prefix that are part of some glued component.
pub fn component_vertices(p: &StarUniversalPrefix) -> HashSet<usize> {
    (p.core_size..p.graph.n()).collect()
}
