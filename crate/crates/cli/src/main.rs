//! `staruniv`: containment checks, decompositions, universal-prefix
//! embeddings and gadget families from the command line.
//!
//! Exit status: 0 when the relation holds or the construction succeeded,
//! 1 when it does not hold, 2 on input or parameter errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use staruniv::connectivity::{block_tree, independent_paths, long_cycle};
use staruniv::containment::{
    contains_colored_subgraph, contains_colored_topological, contains_minor, contains_star, contains_subgraph,
    contains_topological, StarPattern,
};
use staruniv::decomposition::{decompose, verify_decomposition, DecompositionParams};
use staruniv::error::Error;
use staruniv::gadgets::{build_g_alpha, check_claim1, check_claim2, parse_word, EdgeSample};
use staruniv::graph::{Alpha, ColoredGraph, Graph};
use staruniv::io::{decode, encode, parse_json, Decoded, Format, GraphDoc};
use staruniv::reduction::{blowup, derive_gamma_star, suppress_degree_two};
use staruniv::skfree::{build_prefix, embed_skfree, IncidenceEnumeration};
use staruniv::universal::{
    embed_universal, trivial_universal_prefix, Registry, Rooted, TrivialKind, UniversalContext,
};
use staruniv::verify::{verify, CertificateDoc};

#[derive(Parser)]
#[command(name = "staruniv", version, about = "Subdivided-star containment and universal-graph tooling")]
struct Cli {
    /// Input file (defaults to stdin).
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Output file (defaults to stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Encoding of graph outputs.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Test a containment relation on a host graph and emit a certificate.
    Check(CheckArgs),
    /// Split a graph into a core and attached parts.
    Decompose {
        #[arg(long)]
        star: String,
        #[arg(long)]
        relaxed_m: Option<usize>,
    },
    /// Re-validate a certificate (or a JSON array of certificates).
    Verify,
    /// Embed a connected T-free graph into an assembled universal prefix.
    Embed {
        #[arg(long)]
        star: String,
        #[arg(long)]
        relaxed_m: Option<usize>,
        /// Registry directory, loaded if present and saved afterwards.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Embed a connected graph of maximum degree below k into a ray prefix.
    EmbedSkfree {
        #[arg(long)]
        k: usize,
        /// Start from the five-entry example table.
        #[arg(long)]
        figure1: bool,
    },
    /// Add every pair joined by at least t independent paths.
    Derive {
        #[arg(long)]
        t: usize,
    },
    /// Replace every edge by n internally disjoint paths of length 2.
    Blowup {
        #[arg(long)]
        n: usize,
    },
    /// Suppress all vertices of degree 2.
    Suppress,
    /// Realize a ray prefix.
    GammaStar {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rays: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        figure1: bool,
    },
    /// Build a truncated gadget graph and optionally check it.
    Gadget(GadgetArgs),
    /// A clique with every edge subdivided k times.
    TrivialUniversal {
        #[arg(long, value_enum, default_value_t = KindArg::CycleGirth)]
        kind: KindArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Inspect or extend a component registry.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Host graph (defaults to --input).
    #[arg(long)]
    host: Option<PathBuf>,
    /// Subdivided star T(p1,...,pk) to look for.
    #[arg(long, conflicts_with = "pattern")]
    star: Option<String>,
    /// Pattern graph.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Topological minor containment.
    #[arg(long, requires = "pattern", conflicts_with = "minor")]
    topo: bool,
    /// Minor containment.
    #[arg(long, requires = "pattern")]
    minor: bool,
    /// Independent paths between two vertices, as "u,v".
    #[arg(long)]
    menger: Option<String>,
    /// Block tree.
    #[arg(long)]
    blocks: bool,
    /// A cycle of at least this length in a 2-connected host.
    #[arg(long)]
    long_cycle: Option<usize>,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long)]
    star: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    depth: usize,
    #[arg(long = "N", short = 'N')]
    copies: usize,
    #[arg(long, value_enum)]
    check: Option<ClaimArg>,
    /// Check this many random edges instead of all.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check edges of gadgets on the truncation boundary.
    #[arg(long)]
    boundary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Claim1,
    Claim2,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    CycleGirth,
    BranchDistance,
}

#[derive(Subcommand)]
enum RegistryAction {
    List {
        #[arg(long)]
        dir: PathBuf,
    },
    /// Admit a 2-coloured graph whose single colour-1 vertex is the root.
    Admit {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        star: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        relaxed_m: Option<usize>,
    },
}

/// A finished command: the document to print and the exit status.
struct Outcome {
    body: String,
    code: u8,
}

impl Outcome {
    fn json(value: Value, code: u8) -> Self {
        Outcome {
            body: serde_json::to_string(&value).expect("json serializes"),
            code,
        }
    }
}

type Res<T> = Result<T, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(|e| Outcome::json(error_doc(&e), 2));
    let mut body = outcome.body;
    body.push('\n');
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("staruniv: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}

fn error_doc(e: &Error) -> Value {
    let kind = match e {
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::UnknownVertex { .. } => "unknown_vertex",
        Error::MissingEdge(..) => "missing_edge",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::Parse { .. } => "parse",
        Error::Resource(_) => "resource",
        Error::Structural { .. } => "structural",
        Error::Precondition { .. } => "precondition",
        Error::Inconclusive(_) => "inconclusive",
    };
    let mut doc = json!({ "kind": kind, "message": e.to_string() });
    match e {
        Error::Parse { offset, .. } => doc["offset"] = json!(offset),
        Error::Structural { vertices, .. } => doc["vertices"] = json!(vertices),
        Error::Precondition {
            certificate: Some(c), ..
        } => doc["certificate"] = c.clone(),
        _ => {}
    }
    json!({ "error": doc })
}

fn read_bytes(path: Option<&Path>) -> Res<Vec<u8>> {
    let mut buf = Vec::new();
    let result = match path {
        Some(p) => std::fs::read(p).map(|b| buf = b),
        None => std::io::stdin().read_to_end(&mut buf).map(|_| ()),
    };
    result.map_err(|e| {
        let name = path.map_or("stdin".to_string(), |p| p.display().to_string());
        Error::InvalidParameter(format!("cannot read {name}: {e}"))
    })?;
    Ok(buf)
}

fn read_graph(path: Option<&Path>) -> Res<Decoded> {
    decode(&read_bytes(path)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("json serializes")
}

fn graph_output(g: &Graph, colors: Option<&[u64]>, format: OutFormat) -> Outcome {
    let format = match format {
        OutFormat::Json => Format::Json,
        OutFormat::Dot => Format::Dot,
    };
    let mut body = encode(g, colors, format);
    if body.ends_with('\n') {
        body.pop();
    }
    Outcome { body, code: 0 }
}

/// Merges extra fields into a graph document.
fn graph_with(doc: GraphDoc, extra: Value) -> Value {
    let mut v = to_value(&doc);
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn run(cli: &Cli) -> Res<Outcome> {
    let input = cli.input.as_deref();
    match &cli.command {
        Command::Check(args) => check(args, input),
        Command::Decompose { star, relaxed_m } => {
            let g = read_graph(input)?.graph;
            let t = StarPattern::parse(star)?;
            let out = decompose(&g, &t, *relaxed_m)?;
            let params = DecompositionParams::new(&t, *relaxed_m);
            let report = verify_decomposition(&g, &params, &out.decomposition);
            let cert = CertificateDoc::Decomposition {
                host: GraphDoc::from_graph(&g),
                legs: t.legs().to_vec(),
                relaxed_m: *relaxed_m,
                core: out.decomposition.core.clone(),
                parts: out.decomposition.parts.clone(),
            };
            let code = if report.all_satisfied() { 0 } else { 1 };
            Ok(Outcome::json(
                json!({
                    "selection": out.selection,
                    "theorem": out.theorem,
                    "report": report,
                    "certificate": cert,
                }),
                code,
            ))
        }
        Command::Verify => {
            let bytes = read_bytes(input)?;
            let value: Value = parse_json(&bytes)?;
            let docs: Vec<CertificateDoc> = match value {
                Value::Array(items) => items
                    .into_iter()
                    .map(serde_json::from_value)
                    .collect::<Result<_, _>>()
                    .map_err(|e| Error::Parse {
                        offset: 0,
                        message: e.to_string(),
                    })?,
                one => vec![serde_json::from_value(one).map_err(|e| Error::Parse {
                    offset: 0,
                    message: e.to_string(),
                })?],
            };
            let reports: Vec<_> = docs.iter().map(verify).collect();
            let code = if reports.iter().all(|r| r.valid) { 0 } else { 1 };
            let body = if reports.len() == 1 && !bytes.iter().find(|b| !b.is_ascii_whitespace()).is_some_and(|&b| b == b'[') {
                to_value(&reports[0])
            } else {
                to_value(&reports)
            };
            Ok(Outcome::json(body, code))
        }
        Command::Embed {
            star,
            relaxed_m,
            registry,
        } => {
            let g = read_graph(input)?.graph;
            let t = StarPattern::parse(star)?;
            let mut ctx = UniversalContext::new(&t, *relaxed_m)?;
            if let Some(dir) = registry {
                if dir.join("index.json").exists() {
                    let loaded = Registry::load(dir)?;
                    if loaded.t != t || loaded.relaxed_m != *relaxed_m {
                        return Err(Error::InvalidParameter(format!(
                            "registry in {} was built for {} with relaxed m {:?}",
                            dir.display(),
                            loaded.t.label(),
                            loaded.relaxed_m
                        )));
                    }
                    ctx.registry = loaded;
                }
            }
            let emb = embed_universal(&g, &mut ctx)?;
            if let Some(dir) = registry {
                ctx.registry.save(dir)?;
            }
            let cert = CertificateDoc::topological(
                GraphDoc::from_graph(&emb.prefix.graph),
                GraphDoc::from_graph(&g),
                &emb.embedding,
            );
            Ok(Outcome::json(
                json!({
                    "selection": emb.decomposition.selection,
                    "core_size": emb.prefix.core_size,
                    "prefix_t_free": contains_star(&emb.prefix.graph, &t).is_none(),
                    "registry_size": ctx.registry.len(),
                    "consistency": emb.consistency,
                    "certificate": cert,
                }),
                0,
            ))
        }
        Command::EmbedSkfree { k, figure1 } => {
            let d = read_graph(input)?;
            let g = match d.colored {
                Some(c) => c,
                None => ColoredGraph::uniform(d.graph, Alpha::Omega, 0)?,
            };
            let table = figure1.then(IncidenceEnumeration::five_entry_example);
            let mut prefix = build_prefix(*k, 1, 1, table)?;
            let emb = embed_skfree(&g, &mut prefix, true)?;
            let host = GraphDoc::from_colored(&emb.host.graph);
            let cert = CertificateDoc::topological(host.clone(), GraphDoc::from_colored(&g), &emb.embedding);
            Ok(Outcome::json(
                json!({
                    "assignment": emb.assignment,
                    "host": graph_with(host, json!({
                        "labels": emb.host.labels,
                        "attachments": emb.host.attachments(&prefix.table),
                    })),
                    "certificate": cert,
                }),
                0,
            ))
        }
        Command::Derive { t } => {
            let g = read_graph(input)?.graph;
            Ok(graph_output(&derive_gamma_star(&g, *t)?, None, cli.format))
        }
        Command::Blowup { n } => {
            let g = read_graph(input)?.graph;
            let b = blowup(&g, *n)?;
            if let OutFormat::Dot = cli.format {
                return Ok(graph_output(&b.graph, None, cli.format));
            }
            Ok(Outcome::json(
                graph_with(
                    GraphDoc::from_graph(&b.graph),
                    json!({ "base_n": b.base_n, "copies": b.copies }),
                ),
                0,
            ))
        }
        Command::Suppress => {
            let g = read_graph(input)?.graph;
            let s = suppress_degree_two(&g)?;
            if let OutFormat::Dot = cli.format {
                return Ok(graph_output(&s.graph, None, cli.format));
            }
            let chains: Vec<Value> = s
                .chains
                .iter()
                .map(|((a, b), inner)| json!({ "ends": [a, b], "inner": inner }))
                .collect();
            Ok(Outcome::json(
                graph_with(GraphDoc::from_graph(&s.graph), json!({ "kept": s.kept, "chains": chains })),
                0,
            ))
        }
        Command::GammaStar { k, rays, len, figure1 } => {
            let table = figure1.then(IncidenceEnumeration::five_entry_example);
            let prefix = build_prefix(*k, *rays, *len, table)?;
            let r = prefix.realize();
            if let OutFormat::Dot = cli.format {
                return Ok(graph_output(&r.graph.graph, Some(r.graph.colors()), cli.format));
            }
            Ok(Outcome::json(
                graph_with(
                    GraphDoc::from_colored(&r.graph),
                    json!({ "labels": r.labels, "attachments": r.attachments(&prefix.table) }),
                ),
                0,
            ))
        }
        Command::Gadget(args) => gadget(args, cli.format),
        Command::TrivialUniversal { kind, k, n } => {
            let kind = match kind {
                KindArg::CycleGirth => TrivialKind::CycleGirth,
                KindArg::BranchDistance => TrivialKind::BranchDistance,
            };
            Ok(graph_output(&trivial_universal_prefix(kind, *k, *n)?, None, cli.format))
        }
        Command::Registry { action } => registry(action, input),
    }
}

fn check(args: &CheckArgs, input: Option<&Path>) -> Res<Outcome> {
    let host_path = args.host.as_deref().or(input);
    let host = read_graph(host_path)?;
    let h = &host.graph;
    let absent = || Ok(Outcome::json(json!({ "holds": false }), 1));
    if let Some(star) = &args.star {
        let t = StarPattern::parse(star)?;
        return match contains_star(h, &t) {
            Some(w) => Ok(Outcome::json(to_value(&CertificateDoc::star(h, t.legs(), &w)), 0)),
            None => absent(),
        };
    }
    if let Some(path) = &args.pattern {
        let pattern = read_graph(Some(path))?;
        let p = &pattern.graph;
        if args.minor {
            return match contains_minor(h, p)? {
                Some(m) => Ok(Outcome::json(to_value(&CertificateDoc::minor(h, p, &m, false)), 0)),
                None => absent(),
            };
        }
        let colored = match (&host.colored, &pattern.colored) {
            (Some(a), Some(b)) => Some((a.clone(), b.clone())),
            (None, None) => None,
            (Some(a), None) => Some((a.clone(), ColoredGraph::uniform(p.clone(), a.alpha, 0)?)),
            (None, Some(b)) => Some((ColoredGraph::uniform(h.clone(), b.alpha, 0)?, b.clone())),
        };
        let (hd, pd) = match &colored {
            Some((a, b)) => (GraphDoc::from_colored(a), GraphDoc::from_colored(b)),
            None => (GraphDoc::from_graph(h), GraphDoc::from_graph(p)),
        };
        if args.topo {
            let found = match &colored {
                Some((a, b)) => contains_colored_topological(a, b)?,
                None => contains_topological(h, p),
            };
            return match found {
                Some(e) => Ok(Outcome::json(to_value(&CertificateDoc::topological(hd, pd, &e)), 0)),
                None => absent(),
            };
        }
        let found = match &colored {
            Some((a, b)) => contains_colored_subgraph(a, b)?,
            None => contains_subgraph(h, p),
        };
        return match found {
            Some(e) => Ok(Outcome::json(to_value(&CertificateDoc::subgraph(hd, pd, &e)), 0)),
            None => absent(),
        };
    }
    if let Some(pair) = &args.menger {
        let ends: Vec<usize> = pair
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::InvalidParameter(format!("expected \"u,v\", got {pair:?}")))?;
        let [u, v] = ends[..] else {
            return Err(Error::InvalidParameter(format!("expected \"u,v\", got {pair:?}")));
        };
        let fam = independent_paths(h, u, v, usize::MAX)?;
        let cert = CertificateDoc::PathFamily {
            host: GraphDoc::from_graph(h),
            u,
            v,
            paths: fam.paths,
        };
        return Ok(Outcome::json(to_value(&cert), 0));
    }
    if args.blocks {
        let bt = block_tree(h);
        let cert = CertificateDoc::BlockTree {
            host: GraphDoc::from_graph(h),
            cutvertices: bt.cutvertices,
            blocks: bt.blocks,
        };
        return Ok(Outcome::json(to_value(&cert), 0));
    }
    if let Some(n) = args.long_cycle {
        return match long_cycle(h, n)? {
            Some(cycle) => {
                let cert = CertificateDoc::Cycle {
                    host: GraphDoc::from_graph(h),
                    cycle,
                    min_length: n,
                };
                Ok(Outcome::json(to_value(&cert), 0))
            }
            None => absent(),
        };
    }
    Err(Error::InvalidParameter(
        "check needs one of --star, --pattern, --menger, --blocks, --long-cycle".into(),
    ))
}

fn gadget(args: &GadgetArgs, format: OutFormat) -> Res<Outcome> {
    let t = StarPattern::parse(&args.star)?;
    let alpha = parse_word(&args.alpha)?;
    let g = build_g_alpha(&t, &alpha, args.depth, args.copies)?;
    if let OutFormat::Dot = format {
        return Ok(graph_output(&g.graph, None, format));
    }
    let mut doc = to_value(&g.summary());
    let mut code = 0;
    match args.check {
        Some(ClaimArg::Claim1) => {
            let r = check_claim1(&g, &t);
            if !r.holds {
                code = 1;
            }
            doc["claim1"] = to_value(&r);
        }
        Some(ClaimArg::Claim2) => {
            let sample = match args.sample {
                Some(count) => EdgeSample::Random { count, seed: args.seed },
                None => EdgeSample::All,
            };
            let r = check_claim2(&g, &t, sample, args.boundary);
            if !r.holds() {
                code = 1;
            }
            doc["claim2"] = json!({
                "checked": r.checks.len(),
                "failures": r.failures(),
                "skipped": r.skipped.len(),
                "notice": r.notice,
                "checks": r.checks,
            });
        }
        None => {}
    }
    Ok(Outcome::json(doc, code))
}

fn registry(action: &RegistryAction, input: Option<&Path>) -> Res<Outcome> {
    let describe = |r: &Registry| {
        let comps: Vec<Value> = r
            .components()
            .map(|c| {
                json!({
                    "n": c.n,
                    "index": c.index,
                    "vertices": c.rooted.graph.n(),
                    "edges": c.rooted.graph.edge_count(),
                    "root": c.rooted.root,
                })
            })
            .collect();
        json!({ "star": r.t.legs(), "relaxed_m": r.relaxed_m, "components": comps })
    };
    match action {
        RegistryAction::List { dir } => Ok(Outcome::json(describe(&Registry::load(dir)?), 0)),
        RegistryAction::Admit {
            dir,
            star,
            n,
            relaxed_m,
        } => {
            let t = StarPattern::parse(star)?;
            let mut r = if dir.join("index.json").exists() {
                Registry::load(dir)?
            } else {
                Registry::new(&t, *relaxed_m)?
            };
            if r.t != t {
                return Err(Error::InvalidParameter(format!(
                    "registry in {} was built for {}",
                    dir.display(),
                    r.t.label()
                )));
            }
            let d = read_graph(input)?;
            let cg = d
                .colored
                .ok_or_else(|| Error::InvalidGraph("component needs colours marking its root".into()))?;
            let rooted = Rooted::from_colored(&cg)?;
            let adm = r.admit(&rooted, *n)?;
            r.save(dir)?;
            Ok(Outcome::json(
                json!({ "n": adm.n, "index": adm.index, "new": adm.new, "map": adm.map }),
                0,
            ))
        }
    }
}
