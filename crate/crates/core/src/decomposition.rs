//! Splitting a connected graph without a subdivided star into a low-degree
//! core and attached parts without long paths.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{block_tree, BlockTree};
use crate::containment::{contains_star, StarPattern, StarWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::longest_path;

/// Thresholds derived from the star `T(p_1, ..., p_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub legs: Vec<usize>,
    pub k: usize,
    pub p_k: usize,
    /// `(k+1)^2 (2 p_k)^2`, or the relaxed substitute.
    pub m_bound: usize,
    /// `4 p_k m`.
    pub long_path_threshold: usize,
    /// `2 p_k`.
    pub core_path: usize,
    /// `8 p_k + 2m`.
    pub part_path_bound: usize,
    /// Set when `m_bound` was replaced; such runs carry no guarantee.
    pub relaxed: bool,
}

impl DecompositionParams {
    pub fn new(t: &StarPattern, relaxed_m: Option<usize>) -> Self {
        let k = t.k();
        let p_k = t.longest();
        let true_m = (k + 1) * (k + 1) * (2 * p_k) * (2 * p_k);
        let m = relaxed_m.unwrap_or(true_m);
        DecompositionParams {
            legs: t.legs().to_vec(),
            k,
            p_k,
            m_bound: m,
            long_path_threshold: 4 * p_k * m,
            core_path: 2 * p_k,
            part_path_bound: 8 * p_k + 2 * m,
            relaxed: relaxed_m.is_some_and(|r| r != true_m),
        }
    }

    /// Whether the stored thresholds agree with the legs.
    pub fn is_consistent(&self) -> bool {
        let Ok(t) = StarPattern::new(self.legs.clone()) else {
            return false;
        };
        let fresh = DecompositionParams::new(&t, self.relaxed.then_some(self.m_bound));
        fresh == *self
    }
}

/// How the seed subgraph of the core was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Selection {
    /// A single block containing a path of length `m`.
    LongBlock { block: Vec<usize> },
    /// The middle half of a path through `4 p_k` blocks of the block tree.
    BlockPath { blocks: Vec<Vec<usize>> },
}

/// `core` induces `G*`; each part `(v, vertices)` induces `G_v` and contains `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub core: Vec<usize>,
    pub parts: Vec<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeOutput {
    pub decomposition: Decomposition,
    pub selection: Selection,
    /// False when run with a relaxed `m`.
    pub theorem: bool,
}

/// Block-by-block check that blocks meeting a vertex of degree at least `k`
/// have no path of length `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockBoundReport {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_witness: Option<StarWitness>,
    pub m_bound: usize,
    pub blocks: Vec<BlockEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub block: usize,
    pub size: usize,
    pub longest_lower: usize,
    pub longest_upper: usize,
    pub status: BlockStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockStatus {
    Pass,
    Violation,
    Inconclusive,
}

impl BlockBoundReport {
    pub fn all_pass(&self) -> bool {
        self.applicable && self.blocks.iter().all(|b| b.status == BlockStatus::Pass)
    }
}

pub fn check_block_bound(g: &Graph, t: &StarPattern) -> Result<BlockBoundReport> {
    let params = DecompositionParams::new(t, None);
    if let Some(w) = contains_star(g, t) {
        return Ok(BlockBoundReport {
            applicable: false,
            star_witness: Some(w),
            m_bound: params.m_bound,
            blocks: Vec::new(),
        });
    }
    let bt = block_tree(g);
    let mut blocks = Vec::new();
    for (i, b) in bt.blocks.iter().enumerate() {
        if !b.iter().any(|&v| g.degree(v) >= params.k) {
            continue;
        }
        let bounds = longest_path::bounds(&g.induced(b), params.m_bound)?;
        let status = match bounds.decides(params.m_bound) {
            Some(false) => BlockStatus::Pass,
            Some(true) => BlockStatus::Violation,
            None => BlockStatus::Inconclusive,
        };
        blocks.push(BlockEntry {
            block: i,
            size: b.len(),
            longest_lower: bounds.lower,
            longest_upper: bounds.upper,
            status,
        });
    }
    Ok(BlockBoundReport {
        applicable: true,
        star_witness: None,
        m_bound: params.m_bound,
        blocks,
    })
}

/// Node ids of the block-cut tree: blocks first, then cutvertices.
struct CutTree<'a> {
    bt: &'a BlockTree,
    adj: Vec<Vec<usize>>,
    cut_node: HashMap<usize, usize>,
}

impl<'a> CutTree<'a> {
    fn new(bt: &'a BlockTree) -> Self {
        let nb = bt.blocks.len();
        let cut_node: HashMap<usize, usize> = bt.cutvertices.iter().enumerate().map(|(i, &c)| (c, nb + i)).collect();
        let mut adj = vec![Vec::new(); nb + bt.cutvertices.len()];
        for &(c, b) in &bt.tree_edges {
            adj[cut_node[&c]].push(b);
            adj[b].push(cut_node[&c]);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        CutTree { bt, adj, cut_node }
    }

    fn is_block(&self, x: usize) -> bool {
        x < self.bt.blocks.len()
    }

    fn bfs(&self, s: usize) -> (usize, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        let mut last = s;
        while let Some(x) = queue.pop_front() {
            last = x;
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (last, parent)
    }

    /// Node sequence of a longest path; its ends are leaves, hence blocks.
    fn longest_path(&self) -> Vec<usize> {
        let (a, _) = self.bfs(0);
        let (b, parent) = self.bfs(a);
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            path.push(x);
        }
        path
    }
}

/// Splits `g` into a core `G*` and parts `G_v`.
///
/// Pass `relaxed_m` to replace `m` by a smaller value; the result is then
/// marked as carrying no guarantee.
pub fn decompose(g: &Graph, t: &StarPattern, relaxed_m: Option<usize>) -> Result<DecomposeOutput> {
    let params = DecompositionParams::new(t, relaxed_m);
    if t.k() < 3 {
        return Err(Error::InvalidParameter("the star needs at least 3 legs".into()));
    }
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    if let Some(w) = contains_star(g, t) {
        return Err(Error::precondition_with(format!("graph contains {}", t.label()), &w));
    }
    let threshold = params.long_path_threshold;
    let bounds = longest_path::bounds(g, threshold)?;
    match bounds.decides(threshold) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::precondition_with(
                format!("graph has no path of length {threshold}"),
                &serde_json::json!({ "longest_path_upper_bound": bounds.upper }),
            ))
        }
        None => {
            return Err(Error::Inconclusive(format!(
                "longest path lies in [{}, {}], cannot compare with {threshold}",
                bounds.lower, bounds.upper
            )))
        }
    }

    let k = params.k;
    let bt = block_tree(g);
    let tree = CutTree::new(&bt);
    let low = |b: &Vec<usize>| b.iter().all(|&v| g.degree(v) < k);

    // Seed: a low-degree block with a path of length m, else the middle of a block path.
    let mut seed: Vec<usize> = Vec::new();
    let mut selection = None;
    for (i, b) in bt.blocks.iter().enumerate() {
        if b.len() <= params.m_bound || !low(b) {
            continue;
        }
        let bb = longest_path::bounds(&g.induced(b), params.m_bound)?;
        if bb.lower >= params.m_bound {
            seed.push(i);
            selection = Some(Selection::LongBlock { block: b.clone() });
            break;
        }
    }
    if selection.is_none() {
        let path = tree.longest_path();
        let blocks: Vec<usize> = path.iter().copied().filter(|&x| tree.is_block(x)).collect();
        let need = 4 * params.p_k;
        if blocks.len() < need {
            return Err(Error::precondition(format!(
                "no block has a path of length {} and the longest block path has {} < {need} blocks",
                params.m_bound,
                blocks.len()
            )));
        }
        let start = (blocks.len() - need) / 2;
        let middle = &blocks[start + params.p_k..start + 3 * params.p_k];
        if let Some(&bad) = middle.iter().find(|&&b| !low(&bt.blocks[b])) {
            let vertices: Vec<usize> = bt.blocks[bad].iter().copied().filter(|&v| g.degree(v) >= k).collect();
            return Err(Error::Structural {
                message: format!("middle block of the block path has a vertex of degree >= {k}"),
                vertices,
            });
        }
        seed.extend_from_slice(middle);
        // Cutvertices between consecutive middle blocks.
        let first = path.iter().position(|&x| x == middle[0]).unwrap();
        let last = path.iter().position(|&x| x == *middle.last().unwrap()).unwrap();
        let (lo, hi) = (first.min(last), first.max(last));
        seed.extend(path[lo..=hi].iter().copied().filter(|&x| !tree.is_block(x)));
        selection = Some(Selection::BlockPath {
            blocks: middle.iter().map(|&b| bt.blocks[b].clone()).collect(),
        });
    }

    // Maximal subtree around the seed avoiding blocks with a vertex of degree >= k.
    let nodes = tree.adj.len();
    let mut in_tree = vec![false; nodes];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &x in &seed {
        in_tree[x] = true;
        queue.push_back(x);
    }
    while let Some(x) = queue.pop_front() {
        for &y in &tree.adj[x] {
            if in_tree[y] {
                continue;
            }
            if tree.is_block(y) && !low(&bt.blocks[y]) {
                continue;
            }
            in_tree[y] = true;
            queue.push_back(y);
        }
    }
    // Drop cutvertex leaves once.
    let leaves: Vec<usize> = (0..nodes)
        .filter(|&x| in_tree[x] && !tree.is_block(x) && tree.adj[x].iter().filter(|&&y| in_tree[y]).count() <= 1)
        .collect();
    for x in leaves {
        in_tree[x] = false;
    }

    let mut in_core = vec![false; g.n()];
    for b in (0..bt.blocks.len()).filter(|&b| in_tree[b]) {
        for &v in &bt.blocks[b] {
            in_core[v] = true;
        }
    }
    let core: Vec<usize> = (0..g.n()).filter(|&v| in_core[v]).collect();

    // Components of the block-cut tree outside the core subtree.
    let mut parts: BTreeMap<usize, Vec<usize>> = core.iter().map(|&v| (v, vec![v])).collect();
    let mut seen = in_tree.clone();
    for s in 0..nodes {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &tree.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    q.push_back(y);
                }
            }
        }
        let mut vertices: Vec<usize> = comp
            .iter()
            .filter(|&&x| tree.is_block(x))
            .flat_map(|&b| bt.blocks[b].iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let attach: Vec<usize> = vertices.iter().copied().filter(|&v| in_core[v]).collect();
        if attach.len() != 1 {
            return Err(Error::Structural {
                message: "a component outside the core does not meet it in exactly one vertex".into(),
                vertices: attach,
            });
        }
        let part = parts.get_mut(&attach[0]).expect("attachment lies in the core");
        part.extend(vertices.into_iter().filter(|&v| !in_core[v]));
    }
    let parts = parts
        .into_iter()
        .map(|(v, mut vs)| {
            vs.sort_unstable();
            (v, vs)
        })
        .collect();
    let _ = &tree.cut_node;
    Ok(DecomposeOutput {
        decomposition: Decomposition { core, parts },
        selection: selection.expect("a selection was made"),
        theorem: !params.relaxed,
    })
}

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: u8,
    pub name: String,
    pub satisfied: bool,
    /// Property (5) is informational under a relaxed `m`.
    pub required: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub theorem: bool,
    pub properties: Vec<PropertyCheck>,
}

impl DecompositionReport {
    pub fn all_satisfied(&self) -> bool {
        self.properties.iter().all(|p| p.satisfied || !p.required)
    }

    pub fn failures(&self) -> Vec<u8> {
        self.properties
            .iter()
            .filter(|p| !p.satisfied && p.required)
            .map(|p| p.property)
            .collect()
    }

    pub fn get(&self, property: u8) -> Option<&PropertyCheck> {
        self.properties.iter().find(|p| p.property == property)
    }
}

fn induced_connected(g: &Graph, vs: &[usize]) -> bool {
    !vs.is_empty() && g.induced(vs).is_connected()
}

/// Checks properties (1)–(5) of a decomposition independently of how it was built.
pub fn verify_decomposition(g: &Graph, params: &DecompositionParams, d: &Decomposition) -> DecompositionReport {
    let n = g.n();
    let check = |property: u8, name: &str, result: std::result::Result<(), String>, required: bool| PropertyCheck {
        property,
        name: name.to_string(),
        satisfied: result.is_ok(),
        required,
        detail: result.err().unwrap_or_default(),
    };
    let in_range = d.core.iter().chain(d.parts.iter().flat_map(|(v, p)| std::iter::once(v).chain(p))).all(|&x| x < n);
    if !in_range {
        let fail = |p: u8, name: &str| check(p, name, Err("vertex out of range".into()), true);
        return DecompositionReport {
            theorem: !params.relaxed,
            properties: vec![
                fail(1, "cover"),
                fail(2, "intersections"),
                fail(3, "core degree"),
                fail(4, "core path"),
                fail(5, "part paths"),
            ],
        };
    }
    let mut in_core = vec![false; n];
    for &v in &d.core {
        in_core[v] = true;
    }
    let mut owner = vec![usize::MAX; n];

    // (2): G* ∩ G_v = {v}, parts disjoint, one part per core vertex, all connected.
    let p2 = (|| {
        if !induced_connected(g, &d.core) {
            return Err("core is empty or not connected".to_string());
        }
        let mut attached = vec![false; n];
        for (i, (v, part)) in d.parts.iter().enumerate() {
            if !in_core[*v] {
                return Err(format!("attachment {v} is not a core vertex"));
            }
            if std::mem::replace(&mut attached[*v], true) {
                return Err(format!("two parts attach at {v}"));
            }
            let meet: Vec<usize> = part.iter().copied().filter(|&x| in_core[x]).collect();
            if meet != [*v] {
                return Err(format!("part at {v} meets the core in {meet:?}"));
            }
            for &x in part {
                if owner[x] != usize::MAX {
                    return Err(format!("vertex {x} lies in two parts"));
                }
                owner[x] = i;
            }
            if !induced_connected(g, part) {
                return Err(format!("part at {v} is not connected"));
            }
        }
        if let Some(v) = d.core.iter().find(|&&v| !attached[v]) {
            return Err(format!("core vertex {v} has no part"));
        }
        Ok(())
    })();

    // (1): every vertex and edge lies in G* or some G_v.
    let p1 = (|| {
        if let Some(x) = (0..n).find(|&x| !in_core[x] && owner[x] == usize::MAX) {
            return Err(format!("vertex {x} is not covered"));
        }
        for (a, b) in g.edges() {
            let in_part = owner[a] != usize::MAX && owner[a] == owner[b];
            if !(in_core[a] && in_core[b]) && !in_part {
                return Err(format!("edge {a}-{b} is not covered"));
            }
        }
        Ok(())
    })();

    let p3 = match d.core.iter().find(|&&v| g.degree(v) >= params.k) {
        Some(v) => Err(format!("core vertex {v} has degree {} >= {}", g.degree(*v), params.k)),
        None => Ok(()),
    };

    let p4 = match longest_path::bounds(&g.induced(&d.core), params.core_path) {
        Ok(b) if b.lower >= params.core_path => Ok(()),
        Ok(b) if b.upper < params.core_path => Err(format!("core has no path of length {}", params.core_path)),
        Ok(_) => Err(format!("could not find a path of length {} in the core", params.core_path)),
        Err(e) => Err(e.to_string()),
    };

    let bound = params.part_path_bound;
    let p5: std::result::Result<(), String> = d
        .parts
        .par_iter()
        .filter(|(_, p)| p.len() > bound)
        .map(|(v, p)| match longest_path::bounds(&g.induced(p), bound) {
            Ok(b) => match b.decides(bound) {
                Some(false) => Ok(()),
                Some(true) => Err(format!("part at {v} has a path of length {bound}")),
                None => Err(format!("part at {v}: longest path in [{}, {}] is inconclusive", b.lower, b.upper)),
            },
            Err(e) => Err(e.to_string()),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    DecompositionReport {
        theorem: !params.relaxed,
        properties: vec![
            check(1, "cover", p1, true),
            check(2, "intersections", p2, true),
            check(3, "core degree", p3, true),
            check(4, "core path", p4, true),
            check(5, "part paths", p5, !params.relaxed),
        ],
    }
}
