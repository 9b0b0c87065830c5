//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every check compares library output against an independent oracle
//! (brute force or a direct construction). All emitted certificates are
//! re-validated at the end by the `verify` subcommand of the binary.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use staruniv::connectivity::{independent_paths, is_two_connected, long_cycle};
use staruniv::containment::{contains_star, contains_subgraph, contains_topological, StarPattern};
use staruniv::decomposition::{decompose, verify_decomposition, DecompositionParams, Selection};
use staruniv::gadgets::{alternating_sequences, build_g_alpha, check_claim1, check_claim2, EdgeSample};
use staruniv::graph::{Alpha, ColoredGraph, Graph};
use staruniv::io::GraphDoc;
use staruniv::longest_path::exact_small;
use staruniv::reduction::{blowup, derive_gamma_star, minor_to_topminor_witness};
use staruniv::skfree::{build_prefix, embed_skfree, IncidenceEnumeration, PrefixVertex};
use staruniv::universal::{embed_universal, UniversalContext};
use staruniv::verify::{check_minor, check_path_family, check_topological, CertificateDoc};

struct Line {
    id: u8,
    pass: bool,
    detail: String,
}

/// Certificates streamed to JSON array files, a few thousand per file.
struct Certificates {
    dir: tempfile::TempDir,
    files: Vec<(u8, std::path::PathBuf, usize)>,
    open: Option<BufWriter<File>>,
    open_bytes: usize,
    bytes: usize,
}

const PER_FILE: usize = 5_000;
const BYTES_PER_FILE: usize = 16 << 20;

impl Certificates {
    fn new() -> Self {
        Certificates {
            dir: tempfile::tempdir().unwrap(),
            files: Vec::new(),
            open: None,
            open_bytes: 0,
            bytes: 0,
        }
    }

    fn add(&mut self, id: u8, doc: CertificateDoc) {
        let fresh = match self.files.last() {
            Some(&(c, _, count)) => c != id || count == PER_FILE || self.open_bytes > BYTES_PER_FILE,
            None => true,
        };
        if fresh {
            self.close();
            let path = self.dir.path().join(format!("c{id}-{}.json", self.files.len()));
            let mut w = BufWriter::new(File::create(&path).unwrap());
            w.write_all(b"[").unwrap();
            self.open = Some(w);
            self.open_bytes = 0;
            self.files.push((id, path, 0));
        }
        let (_, _, count) = self.files.last_mut().unwrap();
        let w = self.open.as_mut().unwrap();
        if *count > 0 {
            w.write_all(b",").unwrap();
        }
        let body = serde_json::to_vec(&doc).unwrap();
        w.write_all(&body).unwrap();
        self.open_bytes += body.len();
        self.bytes += body.len();
        *count += 1;
    }

    fn close(&mut self) {
        if let Some(mut w) = self.open.take() {
            w.write_all(b"]").unwrap();
            w.flush().unwrap();
        }
    }

    fn total(&self) -> usize {
        self.files.iter().map(|f| f.2).sum()
    }

    fn per_criterion(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::new();
        for &(id, _, count) in &self.files {
            match out.last_mut() {
                Some((c, n)) if *c == id => *n += count,
                _ => out.push((id, count)),
            }
        }
        out
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

// ---------------------------------------------------------------- criterion 1

fn criterion1(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut disagreements, mut positives) = (0, 0);
    let pairs = 500;
    for _ in 0..pairs {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.1..0.6);
        let g = random_graph(&mut r, n, p);
        let k = r.gen_range(1..=4);
        let legs: Vec<usize> = (0..k).map(|_| r.gen_range(1..=3)).collect();
        let t = StarPattern::new(legs).unwrap();
        let tg = t.realize();
        let star = contains_star(&g, &t);
        let sub = contains_subgraph(&g, &tg);
        let topo = contains_topological(&g, &tg);
        if star.is_some() != sub.is_some() || sub.is_some() != topo.is_some() {
            disagreements += 1;
        }
        if let (Some(w), Some(e), Some(te)) = (star, sub, topo) {
            positives += 1;
            let (h, p) = (GraphDoc::from_graph(&g), GraphDoc::from_graph(&tg));
            certs.add(1, CertificateDoc::star(&g, t.legs(), &w));
            certs.add(1, CertificateDoc::subgraph(h.clone(), p.clone(), &e));
            certs.add(1, CertificateDoc::topological(h, p, &te));
        }
    }
    let took = start.elapsed();
    Line {
        id: 1,
        pass: disagreements == 0 && took < Duration::from_secs(60),
        detail: format!(
            "{pairs} random pairs ({positives} containing T), {disagreements} disagreements, {}",
            secs(took)
        ),
    }
}

// ---------------------------------------------------------------- criterion 2

/// Bitmask adjacency on at most 8 vertices.
type Adj = Vec<u8>;

fn refine(adj: &Adj, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut cell_of = vec![0; adj.len()];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::new();
        for c in &cells {
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; cells.len()];
                    for w in 0..adj.len() {
                        if adj[v] >> w & 1 == 1 {
                            sig[cell_of[w]] += 1;
                        }
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut i = 0;
            while i < keyed.len() {
                let mut j = i;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    j += 1;
                }
                next.push(keyed[i..j].iter().map(|x| x.1).collect());
                i = j;
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Canonical code by individualization and refinement, maximised over leaves.
fn canonical(adj: &Adj) -> u64 {
    fn search(adj: &Adj, cells: Vec<Vec<usize>>, best: &mut u64) {
        let cells = refine(adj, cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let mut code = 0u64;
                for i in 0..order.len() {
                    for j in i + 1..order.len() {
                        code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
                    }
                }
                *best = (*best).max(code);
            }
            Some(i) => {
                for &v in &cells[i] {
                    let mut next = cells.clone();
                    let rest: Vec<usize> = cells[i].iter().copied().filter(|&w| w != v).collect();
                    next.splice(i..=i, [vec![v], rest]);
                    search(adj, next, best);
                }
            }
        }
    }
    let mut best = 0;
    search(adj, vec![(0..adj.len()).collect()], &mut best);
    best
}

/// One representative per isomorphism class, for each order up to `max_n`.
fn graphs_up_to_iso(max_n: usize) -> Vec<Vec<Adj>> {
    let mut levels: Vec<Vec<Adj>> = vec![vec![vec![]]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for g in &levels[n - 1] {
            for mask in 0u16..1 << (n - 1) {
                let mut adj = g.clone();
                adj.push(mask as u8);
                for (v, row) in adj.iter_mut().enumerate().take(n - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                if seen.insert((n, canonical(&adj))) {
                    reps.push(adj);
                }
            }
        }
        levels.push(reps);
    }
    levels
}

fn to_graph(adj: &Adj) -> Graph {
    let mut g = Graph::new(adj.len());
    for u in 0..adj.len() {
        for v in u + 1..adj.len() {
            if adj[u] >> v & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Smallest vertex set separating `u` from `v`, by trying all subsets.
fn brute_separator(adj: &Adj, u: usize, v: usize) -> usize {
    let n = adj.len();
    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    let mut best = usize::MAX;
    for sub in 0u32..1 << others.len() {
        let size = sub.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: u8 = others
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .fold(0, |m, (_, &x)| m | 1 << x);
        let mut reach: u8 = 1 << u;
        loop {
            let grown = (0..n)
                .filter(|&x| reach >> x & 1 == 1)
                .fold(reach, |m, x| m | (adj[x] & !removed));
            if grown == reach {
                break;
            }
            reach = grown;
        }
        if reach >> v & 1 == 0 {
            best = size;
        }
    }
    best
}

fn criterion2(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let levels = graphs_up_to_iso(8);
    let counts: Vec<usize> = levels[1..].iter().map(Vec::len).collect();
    // Unlabelled graphs on 1..8 vertices.
    let counts_ok = counts == [1, 2, 4, 11, 34, 156, 1044, 12346];
    let (mut pairs, mut disagreements) = (0usize, 0usize);
    for level in &levels[1..] {
        for adj in level {
            let g = to_graph(adj);
            for u in 0..adj.len() {
                for v in u + 1..adj.len() {
                    if adj[u] >> v & 1 == 1 {
                        continue;
                    }
                    pairs += 1;
                    let fam = independent_paths(&g, u, v, usize::MAX).unwrap();
                    if fam.len() != brute_separator(adj, u, v) || check_path_family(&g, u, v, &fam.paths).is_err() {
                        disagreements += 1;
                    }
                    certs.add(
                        2,
                        CertificateDoc::PathFamily {
                            host: GraphDoc::from_graph(&g),
                            u,
                            v,
                            paths: fam.paths,
                        },
                    );
                }
            }
        }
    }
    let took = start.elapsed();
    Line {
        id: 2,
        pass: counts_ok && disagreements == 0 && took < Duration::from_secs(600),
        detail: format!(
            "{} graphs on <= 8 vertices (class counts {}), {pairs} non-adjacent pairs, {disagreements} disagreements, {}",
            counts.iter().sum::<usize>(),
            if counts_ok { "match" } else { "WRONG" },
            secs(took)
        ),
    }
}

// ---------------------------------------------------------------- criterion 3

fn criterion3(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let mut r = rng(3);
    let runs = 200;
    let mut failures = 0;
    for _ in 0..runs {
        let n = r.gen_range(2..=8);
        let p = r.gen_range(0.2..0.8);
        let g = random_graph(&mut r, n, p);
        let copies = r.gen_range(1..=6);
        let t = r.gen_range(1..=copies);
        let b = blowup(&g, copies).unwrap();
        let derived = derive_gamma_star(&b.graph, t).unwrap();
        let base: Vec<usize> = (0..n).collect();
        let got = derived.induced(&base);
        let adj: Adj = (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u8, |m, &w| m | 1 << w))
            .collect();
        let mut want = g.clone();
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) && brute_separator(&adj, u, v) >= t {
                    want.add_edge(u, v).unwrap();
                }
            }
        }
        if got != want {
            failures += 1;
        }
        for (u, v) in got.edges() {
            let fam = independent_paths(&b.graph, u, v, t).unwrap();
            if fam.len() < t {
                failures += 1;
            }
            certs.add(
                3,
                CertificateDoc::PathFamily {
                    host: GraphDoc::from_graph(&b.graph),
                    u,
                    v,
                    paths: fam.paths,
                },
            );
        }
    }
    Line {
        id: 3,
        pass: failures == 0,
        detail: format!("{runs} random graphs, {failures} failures, {}", secs(start.elapsed())),
    }
}

// ---------------------------------------------------------------- criterion 4

/// `x` with each vertex blown up to a small connected set and some edges
/// subdivided, plus stray vertices, on at most 16 vertices.
fn planted_host(r: &mut impl Rng, x: &Graph) -> Graph {
    let mut g = Graph::new(0);
    let mut sets = Vec::new();
    for _ in 0..x.n() {
        let a = g.add_vertex();
        if r.gen_bool(0.4) {
            let b = g.add_vertex();
            g.add_edge(a, b).unwrap();
            sets.push(vec![a, b]);
        } else {
            sets.push(vec![a]);
        }
    }
    for (u, v) in x.edges() {
        let a = sets[u][r.gen_range(0..sets[u].len())];
        let b = sets[v][r.gen_range(0..sets[v].len())];
        if g.n() < 15 && r.gen_bool(0.5) {
            let s = g.add_vertex();
            g.add_edge(a, s).unwrap();
            g.add_edge(s, b).unwrap();
        } else {
            g.add_edge(a, b).unwrap();
        }
    }
    while g.n() < 16 && r.gen_bool(0.5) {
        let anchor = r.gen_range(0..g.n());
        let s = g.add_vertex();
        g.add_edge(anchor, s).unwrap();
    }
    for _ in 0..r.gen_range(0..3) {
        let (a, b) = (r.gen_range(0..g.n()), r.gen_range(0..g.n()));
        if a != b {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

fn criterion4(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let mut r = rng(4);
    let mut cases = vec![(Graph::petersen(), Graph::clique(5))];
    for i in 0..20 {
        let x = Graph::clique(if i % 2 == 0 { 4 } else { 5 });
        cases.push((planted_host(&mut r, &x), x));
    }
    let mut failures = Vec::new();
    for (i, (h, x)) in cases.iter().enumerate() {
        let w = match minor_to_topminor_witness(h, x) {
            Ok(Some(w)) => w,
            Ok(None) => {
                failures.push(format!("case {i}: no model found"));
                continue;
            }
            Err(e) => {
                failures.push(format!("case {i}: {e}"));
                continue;
            }
        };
        let simple_ok = w.y.n() > 0 && w.y.min_degree() >= 3;
        let minor_ok = check_minor(&w.y, x, &w.x_in_y, false).is_ok();
        let topo_ok = check_topological(h, &w.y, &w.y_in_h, None, None).is_ok();
        if !(simple_ok && minor_ok && topo_ok) {
            failures.push(format!("case {i}: degree {simple_ok} minor {minor_ok} topological {topo_ok}"));
        }
        certs.add(4, CertificateDoc::minor(&w.y, x, &w.x_in_y, false));
        certs.add(
            4,
            CertificateDoc::topological(GraphDoc::from_graph(h), GraphDoc::from_graph(&w.y), &w.y_in_h),
        );
    }
    Line {
        id: 4,
        pass: failures.is_empty(),
        detail: format!(
            "{} hosts (Petersen/K5 and 20 planted K4/K5), {} failures{}, {}",
            cases.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" {failures:?}") },
            secs(start.elapsed())
        ),
    }
}

// ---------------------------------------------------------------- criterion 5

fn random_two_connected(r: &mut impl Rng) -> Graph {
    loop {
        let n = r.gen_range(3..=14);
        let mut g = Graph::cycle(n);
        let chords = r.gen_range(0..=n);
        for _ in 0..chords {
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            if a != b {
                g.add_edge(a, b).unwrap();
            }
        }
        // Scramble ids so the Hamiltonian cycle is not 0, 1, ..., n-1.
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (perm[a], perm[b])).collect();
        let h = Graph::from_edges(n, &edges).unwrap();
        if is_two_connected(&h) {
            return h;
        }
    }
}

fn criterion5(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let mut r = rng(5);
    let (mut runs, mut failures) = (0, 0);
    while runs < 100 {
        let g = random_two_connected(&mut r);
        let longest = exact_small(&g).lower;
        let n = (2..).take_while(|n| n * n <= longest).last();
        let Some(n) = n else { continue };
        runs += 1;
        match long_cycle(&g, n) {
            Ok(Some(c)) if c.len() >= n => certs.add(
                5,
                CertificateDoc::Cycle {
                    host: GraphDoc::from_graph(&g),
                    cycle: c,
                    min_length: n,
                },
            ),
            _ => failures += 1,
        }
    }
    Line {
        id: 5,
        pass: failures == 0,
        detail: format!("{runs} random 2-connected graphs, {failures} failures, {}", secs(start.elapsed())),
    }
}

// ---------------------------------------------------------------- criterion 6

/// Connected graph on `n` vertices with maximum degree below `k`.
fn random_bounded_degree(r: &mut impl Rng, n: usize, k: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let choices: Vec<usize> = (0..v).filter(|&u| g.degree(u) < k - 1).collect();
        let u = choices[r.gen_range(0..choices.len())];
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..r.gen_range(0..n) {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b && g.degree(a) < k - 1 && g.degree(b) < k - 1 {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// Adjacency of the drawn five-entry prefix: rays `R_0..R_2` with positions
/// `1..=5`, and the attachments read off the drawing.
fn drawn_prefix_matches() -> bool {
    let prefix = build_prefix(4, 3, 4, Some(IncidenceEnumeration::five_entry_example())).unwrap();
    let real = prefix.realize();
    let index = real.index();
    let ray = |ray: usize, pos: usize| index[&PrefixVertex::Ray { ray, pos }];
    let att = |j: usize| index[&PrefixVertex::Attach { j }];
    let mut want = BTreeSet::new();
    for r in 0..3 {
        for pos in 1..5 {
            let (a, b) = (ray(r, pos), ray(r, pos + 1));
            want.insert((a.min(b), a.max(b)));
        }
    }
    let drawn: [(usize, &[usize]); 5] = [(1, &[0, 1]), (2, &[0, 2]), (3, &[0, 1]), (4, &[1]), (5, &[0, 1, 2])];
    for (j, rays) in drawn {
        for &r in rays {
            let (a, b) = (att(j), ray(r, j));
            want.insert((a.min(b), a.max(b)));
        }
    }
    let got: BTreeSet<(usize, usize)> = real.graph.graph.edges().collect();
    real.graph.graph.n() == 20 && got == want
}

fn criterion6(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let mut r = rng(6);
    let runs = 200;
    let mut failures = 0;
    for i in 0..runs {
        let k = [4, 5, 6][i % 3];
        let n = r.gen_range(3..=30);
        let g = random_bounded_degree(&mut r, n, k);
        let colors: Vec<u64> = (0..n).map(|_| r.gen_range(0..4)).collect();
        let cg = ColoredGraph::new(g.clone(), Alpha::Omega, colors).unwrap();
        let mut prefix = build_prefix(k, 1, 1, None).unwrap();
        let emb = match embed_skfree(&cg, &mut prefix, true) {
            Ok(e) => e,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let host = &emb.host.graph;
        let valid = check_topological(&host.graph, &g, &emb.embedding, Some(host.colors()), Some(cg.colors())).is_ok();
        let degrees = (0..n).all(|v| host.graph.degree(emb.embedding.vertex_map[v]) == g.degree(v));
        let full = emb.to_full(&prefix).unwrap();
        let full_graph = prefix.realize().graph.graph;
        let full_degrees = (0..n).all(|v| full_graph.degree(full.vertex_map[v]) == g.degree(v));
        if !(valid && degrees && full_degrees) {
            failures += 1;
        }
        certs.add(
            6,
            CertificateDoc::topological(GraphDoc::from_colored(host), GraphDoc::from_colored(&cg), &emb.embedding),
        );
    }
    let fig = drawn_prefix_matches();
    Line {
        id: 6,
        pass: failures == 0 && fig,
        detail: format!(
            "{runs} random graphs with k in 4..=6, {failures} failures, drawn prefix table {}, {}",
            if fig { "matches" } else { "DIFFERS" },
            secs(start.elapsed())
        ),
    }
}

// ------------------------------------------------------------ criteria 7 and 8

fn star(s: &str) -> StarPattern {
    StarPattern::parse(s).unwrap()
}

fn attach_leaves(g: &mut Graph, at: usize, count: usize) {
    for _ in 0..count {
        let x = g.add_vertex();
        g.add_edge(at, x).unwrap();
    }
}

/// Free of `T(1,2,2)` with a path of length at least `len`.
fn corpus_122(kind: usize, len: usize) -> Graph {
    let mut g = Graph::path(len);
    match kind {
        0 => {}
        1 => {
            attach_leaves(&mut g, 1, 6);
            attach_leaves(&mut g, len - 1, 3);
        }
        2 => g = Graph::cycle(len + 1),
        3 => {
            let x = g.add_vertex();
            g.add_edge(x, len).unwrap();
            g.add_edge(x, len - 1).unwrap();
        }
        4 => {
            attach_leaves(&mut g, 0, 9);
            let x = g.add_vertex();
            g.add_edge(x, len).unwrap();
            g.add_edge(x, len - 1).unwrap();
        }
        _ => {
            attach_leaves(&mut g, 0, 4);
            attach_leaves(&mut g, len, 4);
        }
    }
    g
}

/// Subcubic except for pendant `K4` attachments, so free of `T(1,1,2,2)`,
/// with a path of length at least `len`.
fn corpus_1122(kind: usize, len: usize, r: &mut impl Rng) -> Graph {
    match kind {
        0 => {
            let mut g = Graph::path(len);
            for v in (0..=len).step_by(3) {
                attach_leaves(&mut g, v, 1);
            }
            g
        }
        1 => {
            let rungs = len / 2 + 1;
            let mut g = Graph::new(2 * rungs);
            for i in 0..rungs {
                g.add_edge(2 * i, 2 * i + 1).unwrap();
                if i + 1 < rungs {
                    g.add_edge(2 * i, 2 * i + 2).unwrap();
                    g.add_edge(2 * i + 1, 2 * i + 3).unwrap();
                }
            }
            g
        }
        2 => {
            let units = len / 4 + 1;
            let mut g = Graph::new(4 * units);
            for i in 0..units {
                let b = 4 * i;
                for j in 0..4 {
                    g.add_edge(b + j, b + (j + 1) % 4).unwrap();
                }
                if i + 1 < units {
                    g.add_edge(b + 3, b + 4).unwrap();
                }
            }
            g
        }
        3 => {
            let mut g = Graph::path(len);
            for v in (5..len).step_by(50) {
                let w = g.add_vertex();
                g.add_edge(v, w).unwrap();
                let others = [g.add_vertex(), g.add_vertex(), g.add_vertex()];
                for (i, &a) in others.iter().enumerate() {
                    g.add_edge(w, a).unwrap();
                    for &b in &others[i + 1..] {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            g
        }
        4 => {
            let mut g = Graph::path(len);
            for _ in 0..len / 3 {
                let (a, b) = (r.gen_range(0..=len), r.gen_range(0..=len));
                if a != b && g.degree(a) < 3 && g.degree(b) < 3 {
                    g.add_edge(a, b).unwrap();
                }
            }
            g
        }
        _ => {
            let mut g = Graph::cycle(len + 1);
            for v in (0..=len).step_by(4) {
                attach_leaves(&mut g, v, 1);
            }
            g
        }
    }
}

fn corpus() -> Vec<(StarPattern, Graph)> {
    let mut r = rng(7);
    let mut out = Vec::new();
    let t = star("1,2,2");
    let th = DecompositionParams::new(&t, None).long_path_threshold;
    for kind in 0..6 {
        for extra in [0, 300, 900, 1800, 3000] {
            out.push((t.clone(), corpus_122(kind, th + 1 + extra + kind)));
        }
    }
    let t = star("1,1,2,2");
    let th = DecompositionParams::new(&t, None).long_path_threshold;
    for kind in 0..6 {
        for extra in [0, 400, 1100, 2000] {
            out.push((t.clone(), corpus_1122(kind, th + 1 + extra + kind, &mut r)));
        }
    }
    out
}

fn decomposition_cert(g: &Graph, t: &StarPattern, relaxed_m: Option<usize>, core: &[usize], parts: &[(usize, Vec<usize>)]) -> CertificateDoc {
    CertificateDoc::Decomposition {
        host: GraphDoc::from_graph(g),
        legs: t.legs().to_vec(),
        relaxed_m,
        core: core.to_vec(),
        parts: parts.to_vec(),
    }
}

fn small_relaxed(r: &mut impl Rng, i: usize) -> (StarPattern, Option<usize>, Graph) {
    let m = r.gen_range(1..=3);
    if i % 2 == 0 {
        let t = star("1,2,2");
        let th = DecompositionParams::new(&t, Some(m)).long_path_threshold;
        let len = th + r.gen_range(1..20);
        (t, Some(m), corpus_122(i / 2 % 6, len))
    } else {
        let t = star("1,1,2,2");
        let th = DecompositionParams::new(&t, Some(m)).long_path_threshold;
        let len = th + r.gen_range(2..24);
        (t, Some(m), corpus_1122(i / 2 % 6, len, r))
    }
}

fn criterion7(certs: &mut Certificates, corpus: &[(StarPattern, Graph)]) -> Line {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut max_n = 0;
    for (i, (t, g)) in corpus.iter().enumerate() {
        max_n = max_n.max(g.n());
        if contains_star(g, t).is_some() {
            failures.push(format!("graph {i} contains {}", t.label()));
            continue;
        }
        match decompose(g, t, None) {
            Ok(out) => {
                let d = &out.decomposition;
                let report = verify_decomposition(g, &DecompositionParams::new(t, None), d);
                if !report.all_satisfied() {
                    failures.push(format!("graph {i}: properties {:?} fail", report.failures()));
                }
                certs.add(7, decomposition_cert(g, t, None, &d.core, &d.parts));
            }
            Err(e) => failures.push(format!("graph {i}: {e}")),
        }
    }
    let corpus_time = start.elapsed();

    let mut r = rng(77);
    let (mut long_block, mut block_path, mut relaxed_failures) = (0, 0, 0);
    let runs = 200;
    for i in 0..runs {
        let (t, m, g) = small_relaxed(&mut r, i);
        match decompose(&g, &t, m) {
            Ok(out) => {
                match out.selection {
                    Selection::LongBlock { .. } => long_block += 1,
                    Selection::BlockPath { .. } => block_path += 1,
                }
                let d = &out.decomposition;
                let report = verify_decomposition(&g, &DecompositionParams::new(&t, m), d);
                if !report.all_satisfied() {
                    relaxed_failures += 1;
                }
                certs.add(7, decomposition_cert(&g, &t, m, &d.core, &d.parts));
            }
            Err(_) => relaxed_failures += 1,
        }
    }
    Line {
        id: 7,
        pass: failures.is_empty()
            && corpus_time < Duration::from_secs(600)
            && relaxed_failures == 0
            && long_block > 0
            && block_path > 0,
        detail: format!(
            "{} corpus graphs (up to {max_n} vertices), {} failures{} in {}; {runs} relaxed runs: {long_block} long-block, {block_path} block-path, {relaxed_failures} failures",
            corpus.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" {:?}", &failures[..failures.len().min(3)]) },
            secs(corpus_time),
        ),
    }
}

fn criterion8(certs: &mut Certificates, corpus: &[(StarPattern, Graph)]) -> Line {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut contexts: HashMap<Vec<usize>, UniversalContext> = HashMap::new();
    let mut checked_vertices = 0;
    for (i, (t, g)) in corpus.iter().enumerate() {
        let ctx = contexts
            .entry(t.legs().to_vec())
            .or_insert_with(|| UniversalContext::new(t, None).unwrap());
        // Fresh core per graph keeps the touched ray segments short; the
        // registry is shared so component indices are reused.
        ctx.core = build_prefix(t.k(), 1, 1, None).unwrap();
        let emb = match embed_universal(g, ctx) {
            Ok(e) => e,
            Err(e) => {
                failures.push(format!("graph {i}: {e}"));
                continue;
            }
        };
        let valid = check_topological(&emb.prefix.graph, g, &emb.embedding, None, None);
        let free = contains_star(&emb.prefix.graph, t).is_none();
        let consistent = emb.consistency.iter().all(|c| c.holds());
        checked_vertices += emb.consistency.len();
        if valid.is_err() || !free || !consistent {
            failures.push(format!("graph {i}: valid {valid:?} T-free {free} consistent {consistent}"));
        }
        certs.add(
            8,
            CertificateDoc::topological(GraphDoc::from_graph(&emb.prefix.graph), GraphDoc::from_graph(g), &emb.embedding),
        );
    }
    let registry: usize = contexts.values().map(|c| c.registry.len()).sum();
    Line {
        id: 8,
        pass: failures.is_empty(),
        detail: format!(
            "{} corpus graphs embedded, {} failures{}, consistency checked at {checked_vertices} core vertices, {registry} registry components, {}",
            corpus.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" {:?}", &failures[..failures.len().min(3)]) },
            secs(start.elapsed())
        ),
    }
}

// ---------------------------------------------------------------- criterion 9

fn criterion9(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    let (mut graphs, mut claim1_fail, mut edges, mut claim2_fail, mut thin) = (0, 0, 0, 0, 0);
    for legs in ["2,2,2", "2,2,2,2", "2,2,3"] {
        let t = star(legs);
        for copies in [3, 5] {
            for len in 1..=4 {
                for alpha in alternating_sequences(len) {
                    for depth in 0..=len.min(3) {
                        let g = build_g_alpha(&t, &alpha, depth, copies).unwrap();
                        graphs += 1;
                        if !check_claim1(&g, &t).holds {
                            claim1_fail += 1;
                        }
                        if depth == 0 {
                            continue;
                        }
                        // Every edge, boundary gadgets included; at least 30
                        // whenever the truncation has that many.
                        let report = check_claim2(&g, &t, EdgeSample::All, true);
                        if report.checks.len() < 30.min(g.graph.edge_count()) {
                            thin += 1;
                        }
                        edges += report.checks.len();
                        for c in &report.checks {
                            match &c.witness {
                                Some(w) => {
                                    let h = g.graph.subdivide_edge(c.edge.0, c.edge.1, 1).unwrap();
                                    certs.add(9, CertificateDoc::star(&h, t.legs(), w));
                                }
                                None => claim2_fail += 1,
                            }
                        }
                    }
                }
            }
        }
    }
    let fig = build_g_alpha(&star("2,2,2,2"), &[1, 1, 2], 2, 5).unwrap();
    let fig_ok = fig.graph.n() == 55;
    Line {
        id: 9,
        pass: claim1_fail == 0 && claim2_fail == 0 && thin == 0 && fig_ok,
        detail: format!(
            "{graphs} truncations: claim 1 failures {claim1_fail}; {edges} subdivided edges: claim 2 failures {claim2_fail}; drawn instance has {} vertices; {}",
            fig.graph.n(),
            secs(start.elapsed())
        ),
    }
}

// --------------------------------------------------------------- criterion 10

fn criterion10(certs: &mut Certificates) -> Line {
    let start = Instant::now();
    certs.close();
    let mut valid = 0;
    let mut problems = Vec::new();
    for (id, path, count) in &certs.files {
        let out = Command::new(env!("CARGO_BIN_EXE_staruniv"))
            .args(["verify", "-i", path.to_str().unwrap()])
            .output()
            .unwrap();
        let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
        let reports = reports.as_array().cloned().unwrap_or_default();
        if reports.len() != *count {
            let text = String::from_utf8_lossy(&out.stdout);
            problems.push(format!(
                "criterion {id}: {} reports for {count} certificates (exit {:?}: {} {})",
                reports.len(),
                out.status,
                &text[..text.len().min(300)],
                String::from_utf8_lossy(&out.stderr).chars().take(300).collect::<String>()
            ));
        }
        for rep in &reports {
            if rep["valid"] == true {
                valid += 1;
            } else if problems.len() < 5 {
                problems.push(format!("criterion {id}: {rep}"));
            }
        }
    }
    let total = certs.total();
    let per: Vec<String> = certs.per_criterion().iter().map(|(id, n)| format!("{id}:{n}")).collect();
    Line {
        id: 10,
        pass: valid == total && problems.is_empty(),
        detail: format!(
            "{valid}/{total} certificates valid via `staruniv verify` (by criterion {}; {} files, {} MB){}, {}",
            per.join(" "),
            certs.files.len(),
            certs.bytes >> 20,
            if problems.is_empty() { String::new() } else { format!(" {problems:?}") },
            secs(start.elapsed())
        ),
    }
}

#[test]
fn acceptance() {
    let mut certs = Certificates::new();
    let mut lines = Vec::new();
    let mut report = |line: Line| {
        // Written to the raw handle so the lines show without --nocapture.
        writeln!(
            std::io::stderr(),
            "criterion {:>2} {} {}",
            line.id,
            if line.pass { "PASS" } else { "FAIL" },
            line.detail
        )
        .unwrap();
        lines.push((line.id, line.pass));
    };
    report(criterion1(&mut certs));
    report(criterion2(&mut certs));
    report(criterion3(&mut certs));
    report(criterion4(&mut certs));
    report(criterion5(&mut certs));
    report(criterion6(&mut certs));
    let corpus = corpus();
    report(criterion7(&mut certs, &corpus));
    report(criterion8(&mut certs, &corpus));
    report(criterion9(&mut certs));
    report(criterion10(&mut certs));
    let failed: Vec<u8> = lines.iter().filter(|(_, p)| !p).map(|(id, _)| *id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
