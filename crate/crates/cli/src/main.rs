use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use netfunc_core::bounds::{all_bounds, OptConfig, PairSpec, SearchConfig};
use netfunc_core::chargraph::{self, CharGraph};
use netfunc_core::codesim::{
    diamond_scheme, evaluate, fixed_length_transform, huffman_transform, CodeSpec, RateReport, UDCode,
};
use netfunc_core::entropy::{self, chromatic, kappa};
use netfunc_core::equiv::{n_c_f, CutContext};
use netfunc_core::fixtures;
use netfunc_core::netmodel::{NetworkModel, StrongPartition, DEFAULT_MAX_EDGES};
use netfunc_core::{Error, ProbGraph};

mod report;

use report::{write_csv, Report};

#[derive(Parser, Debug)]
#[command(name = "netfunc", version, about = "Capacity bounds and code simulation for network function computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Largest cut size to enumerate.
    #[arg(long, global = true)]
    max_cut_size: Option<usize>,
    /// Edge-count limit for cut enumeration (hard limit 26).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    max_edges: usize,
    /// JSON file listing (cut, partition) pairs to restrict the search to.
    #[arg(long, global = true)]
    pairs: Option<PathBuf>,
    /// Seed of the improved-bound optimizer.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random starts of the improved-bound optimizer.
    #[arg(long, global = true, default_value_t = 32)]
    starts: usize,
    /// Cross-check the optimizer on a grid (feasible dimension at most 3).
    #[arg(long, global = true)]
    grid_oracle: bool,
    /// Optimizer tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Emit CSV tables instead of JSON where supported.
    #[arg(long, global = true)]
    csv: bool,
    /// Write Graphviz files of the graphs involved into this directory.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a network model file.
    Validate { model: PathBuf },
    /// List cut sets and their strong partitions.
    Cuts { model: PathBuf },
    /// Equivalence classes and class-tuple counts of one strong partition.
    Classes(PairArgs),
    /// Build a characteristic graph and check its layer structure.
    Chargraph(PairArgs),
    /// Shannon, clique, graph and chromatic entropy of a probabilistic graph.
    Entropy { graph: PathBuf },
    /// Lower bounds on the computing rate, with their witnesses.
    Bounds {
        model: PathBuf,
        /// Skip the improved bound.
        #[arg(long)]
        no_improved: bool,
    },
    /// Run a code on every input and report admissibility and rates.
    Simulate(SimulateArgs),
    /// Built-in worked examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
struct PairArgs {
    model: PathBuf,
    /// Comma-separated edge ids of the cut set.
    #[arg(long)]
    cut: String,
    /// Blocks separated by `|`, edges by `,`; defaults to the trivial partition.
    #[arg(long)]
    partition: Option<String>,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SimulateArgs {
    /// Code spec JSON; requires --model.
    code: Option<PathBuf>,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<ExampleName>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Codeword construction for built-in schemes.
    #[arg(long, value_enum, default_value_t = Coder::Huffman)]
    coder: Coder,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExampleName {
    Diamond,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Coder {
    Huffman,
    FixedLength,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    SizeCap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = format!("{}: {e}", e.kind());
        if e.is_size_cap() {
            Failure::SizeCap(msg)
        } else {
            Failure::Input(msg)
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Outcome<NetworkModel> {
    Ok(NetworkModel::from_json(&read(path)?)?)
}

fn search_config(c: &Common) -> Outcome<SearchConfig> {
    let pairs = match &c.pairs {
        Some(p) => Some(
            serde_json::from_str::<Vec<PairSpec>>(&read(p)?)
                .map_err(|e| Failure::Input(format!("Schema: pairs file: {e}")))?,
        ),
        None => None,
    };
    Ok(SearchConfig { max_cut_size: c.max_cut_size, max_edges: c.max_edges, pairs, ..SearchConfig::default() })
}

fn opt_config(c: &Common) -> OptConfig {
    OptConfig { seed: c.seed, starts: c.starts, tol: c.tol, grid_oracle: c.grid_oracle, ..OptConfig::default() }
}

fn parse_partition(model: &NetworkModel, cut: &str, partition: Option<&str>) -> Outcome<StrongPartition> {
    let split = |s: &str| -> Vec<String> { s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect() };
    let cut_ids = split(cut);
    let blocks: Vec<Vec<String>> = match partition {
        Some(p) => p.split('|').map(split).collect(),
        None => vec![cut_ids.clone()],
    };
    let p = model.strong_partition(&blocks)?;
    if p.cut.cut != model.edge_set(&cut_ids)? {
        return Err(Failure::Input("InvalidArgument: partition blocks do not cover the cut".into()));
    }
    Ok(p)
}

fn write_dot(dir: &Option<PathBuf>, name: &str, g: &ProbGraph) -> Outcome<Option<String>> {
    let Some(dir) = dir else { return Ok(None) };
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(format!("{name}.dot"));
    std::fs::write(&path, g.to_dot(name)).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(Some(path.display().to_string()))
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn model_summary(m: &NetworkModel) -> Value {
    json!({
        "alphabet": m.alphabet(),
        "sources": m.source_names(m.all_sources()),
        "sink": m.node_name(m.sink()),
        "nodes": m.num_nodes(),
        "edges": m.edges().iter().map(|e| json!([e.id, m.node_name(e.tail), m.node_name(e.head)])).collect::<Vec<_>>(),
        "domain_size": m.domain_size(),
        "image": m.image(),
    })
}

fn cuts(m: &NetworkModel, c: &Common) -> Outcome<(Value, Vec<Vec<String>>)> {
    let max = c.max_cut_size.unwrap_or(m.num_edges()).max(1);
    let mut rows = vec![vec!["cut".into(), "K".into(), "I".into(), "J".into(), "global".into(), "partitions".into()]];
    let mut list = Vec::new();
    for cut in m.enumerate_cut_sets(max, c.max_edges)? {
        let parts = m.enumerate_strong_partitions(&cut)?;
        let names: Vec<Vec<Vec<String>>> =
            parts.iter().map(|p| p.blocks.iter().map(|&b| m.edge_names(b)).collect()).collect();
        rows.push(vec![
            m.edge_names(cut.cut).join(" "),
            m.source_names(cut.k).join(" "),
            m.source_names(cut.i).join(" "),
            m.source_names(cut.j).join(" "),
            cut.is_global.to_string(),
            parts.iter().map(|p| m.format_pair(p)).collect::<Vec<_>>().join(" "),
        ]);
        list.push(json!({
            "cut": m.edge_names(cut.cut),
            "K": m.source_names(cut.k),
            "I": m.source_names(cut.i),
            "J": m.source_names(cut.j),
            "global": cut.is_global,
            "strong_partitions": names,
        }));
    }
    Ok((json!({ "count": list.len(), "cut_sets": list }), rows))
}

fn classes(m: &NetworkModel, a: &PairArgs) -> Outcome<Value> {
    let p = parse_partition(m, &a.cut, a.partition.as_deref())?;
    let ctx = CutContext::new(m, &p, a.k)?;
    let mut fibers = Vec::new();
    for a_j in 0..ctx.j_space().size() {
        let cls = ctx.classes(a_j);
        let mut classes = Vec::new();
        for (ci, members) in cls.classes.iter().enumerate() {
            let per_l: Vec<usize> =
                (0..ctx.l_space().size()).map(|a_l| ctx.count_n(a_j, ci, a_l)).collect::<Result<_, _>>()?;
            classes.push(json!({
                "members": members.iter().map(|&b| ctx.i_space().label(b)).collect::<Vec<_>>(),
                "N_by_a_L": per_l,
                "N": ctx.count_n_max(a_j, ci)?,
            }));
        }
        let blocks: Vec<Value> = (0..p.m())
            .map(|l| {
                let per_l: Vec<Value> = (0..ctx.l_space().size())
                    .map(|a_l| {
                        let bc = ctx.block_classes(l, a_l, a_j);
                        json!({
                            "a_L": ctx.l_space().label(a_l),
                            "classes": bc.classes.iter()
                                .map(|c| c.iter().map(|&b| ctx.block_space(l).label(b)).collect::<Vec<_>>())
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                json!({ "block": m.edge_names(p.blocks[l]), "I_l": m.source_names(p.block_sources[l]), "by_a_L": per_l })
            })
            .collect();
        fibers.push(json!({
            "a_J": ctx.j_space().label(a_j),
            "classes": classes,
            "block_classes": blocks,
            "sum_N": ctx.fiber_count(a_j),
        }));
    }
    Ok(json!({
        "pair": m.format_pair(&p),
        "I": m.source_names(p.cut.i),
        "J": m.source_names(p.cut.j),
        "L": m.source_names(p.l),
        "k": a.k,
        "fibers": fibers,
        "n_C": ctx.n_c(),
        "n_C_f": if a.k == 1 { Some(n_c_f(m, &p.cut)?) } else { None },
    }))
}

fn chargraph_report(m: &NetworkModel, p: &StrongPartition, k: usize, dot: &Option<PathBuf>) -> Outcome<Value> {
    let cg: CharGraph = chargraph::build(m, p, k)?;
    let layers = chargraph::verify_layers(m, &cg)?;
    let h = entropy::clique_entropy(&cg.graph)?;
    let omega = if cg.graph.n() <= netfunc_core::pgraph::MAX_CLIQUE_VERTICES {
        Some(cg.graph.clique_number()?)
    } else {
        None
    };
    let dot_file = write_dot(dot, &format!("chargraph_{}_k{k}", sanitize(&m.format_pair(p))), &cg.graph)?;
    Ok(json!({
        "pair": m.format_pair(p),
        "k": k,
        "vertices": cg.graph.n(),
        "edge_count": cg.graph.edge_count(),
        "graph": cg.graph.to_spec(),
        "layers": layers,
        "clique_number": omega,
        "n_C": CutContext::new(m, p, k)?.n_c(),
        "clique_entropy": h.value,
        "method": h.method,
        "dot": dot_file,
    }))
}

fn entropy_report(g: &ProbGraph, dot: &Option<PathBuf>) -> Outcome<Value> {
    let w = entropy::clique_entropy(g)?;
    let k = if g.n() <= kappa::MAX_VERTICES { Some(entropy::graph_entropy(g)?) } else { None };
    let chi = if g.n() <= chromatic::MAX_VERTICES { Some(entropy::chromatic_entropy(g)?) } else { None };
    Ok(json!({
        "vertices": g.n(),
        "shannon": entropy::shannon_entropy(g.dist())?,
        "clique_entropy": w,
        "graph_entropy": k,
        "chromatic_entropy": chi,
        "clique_number": if g.n() <= netfunc_core::pgraph::MAX_CLIQUE_VERTICES { Some(g.clique_number()?) } else { None },
        "dot": write_dot(dot, "graph", g)?,
    }))
}

fn bounds_rows(s: &netfunc_core::bounds::BoundsSummary) -> Vec<Vec<String>> {
    let mut rows = vec![["pair", "cut_size", "clique_entropy", "method", "basic", "improved", "n_C", "omega", "fixed_length"]
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()];
    for p in &s.pairs {
        rows.push(vec![
            p.key.clone(),
            p.cut_size.to_string(),
            report::fmt_float(p.clique_entropy),
            format!("{:?}", p.method),
            report::fmt_float(p.basic),
            p.improved.map(report::fmt_float).unwrap_or_default(),
            p.n_c.to_string(),
            p.omega.map(|o| o.to_string()).unwrap_or_default(),
            report::fmt_float(p.fixed_length),
        ]);
    }
    rows
}

fn simulate_report(m: &NetworkModel, code: &UDCode) -> Outcome<RateReport> {
    Ok(evaluate(m, code)?)
}

fn rate_rows(r: &RateReport) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["edge".into(), "expected_length".into(), "rate".into(), "image_size".into(), "uniquely_decodable".into()]];
    for e in &r.edges {
        rows.push(vec![
            e.edge.clone(),
            report::fmt_float(e.expected_length),
            report::fmt_float(e.rate),
            e.image_size.to_string(),
            e.uniquely_decodable.to_string(),
        ]);
    }
    rows
}

fn builtin_code(m: &NetworkModel, k: usize, coder: Coder) -> Outcome<UDCode> {
    let scheme = diamond_scheme(m, k)?;
    Ok(match coder {
        Coder::Huffman => huffman_transform(m, &scheme)?,
        Coder::FixedLength => fixed_length_transform(m, &scheme)?,
    })
}

fn run(cli: &Cli) -> Outcome<String> {
    let c = &cli.common;
    let mut report = Report::new(c);
    match &cli.command {
        Command::Validate { model } => {
            let m = load_model(model)?;
            report.set("validate", json!({ "model": model }), json!({ "valid": true, "model": model_summary(&m) }));
        }
        Command::Cuts { model } => {
            let m = load_model(model)?;
            let (v, rows) = cuts(&m, c)?;
            if c.csv {
                return write_csv(&rows);
            }
            report.set("cuts", json!({ "model": model }), v);
        }
        Command::Classes(a) => {
            let m = load_model(&a.model)?;
            report.set("classes", serde_json::to_value(a).unwrap(), classes(&m, a)?);
        }
        Command::Chargraph(a) => {
            let m = load_model(&a.model)?;
            let p = parse_partition(&m, &a.cut, a.partition.as_deref())?;
            report.set("chargraph", serde_json::to_value(a).unwrap(), chargraph_report(&m, &p, a.k, &c.dot)?);
        }
        Command::Entropy { graph } => {
            let g = ProbGraph::from_json(&read(graph)?)?;
            report.set("entropy", json!({ "graph": graph }), entropy_report(&g, &c.dot)?);
        }
        Command::Bounds { model, no_improved } => {
            let m = load_model(model)?;
            let search = search_config(c)?;
            let opt = opt_config(c);
            let s = all_bounds(&m, &search, (!no_improved).then_some(&opt))?;
            if c.csv {
                return write_csv(&bounds_rows(&s));
            }
            report.set(
                "bounds",
                json!({ "model": model, "improved": !no_improved, "search": search, "optimizer": opt }),
                serde_json::to_value(&s).unwrap(),
            );
        }
        Command::Simulate(a) => {
            let (m, code) = match (&a.builtin, &a.code) {
                (Some(ExampleName::Diamond), None) => {
                    let m = fixtures::diamond();
                    let code = builtin_code(&m, a.k, a.coder)?;
                    (m, code)
                }
                (None, Some(path)) => {
                    let model = a.model.as_ref().ok_or_else(|| Failure::Input("simulate needs --model with a code file".into()))?;
                    let m = load_model(model)?;
                    let spec: CodeSpec = serde_json::from_str(&read(path)?)
                        .map_err(|e| Failure::Input(format!("Schema: code file: {e}")))?;
                    let code = UDCode::from_spec(&m, &spec)?;
                    (m, code)
                }
                _ => return Err(Failure::Input("simulate takes either --builtin or a code file".into())),
            };
            let r = simulate_report(&m, &code)?;
            if c.csv {
                return write_csv(&rate_rows(&r));
            }
            let mut out = serde_json::to_value(&r).unwrap();
            if a.builtin.is_some() {
                out["code"] = serde_json::to_value(code.to_spec(&m)).unwrap();
            }
            report.set("simulate", serde_json::to_value(a).unwrap(), out);
        }
        Command::Example { name: ExampleName::Diamond, bounds, simulate, k } => {
            let m = fixtures::diamond();
            let p = m.strong_partition(&[vec!["e5"], vec!["e6"]])?;
            let mut out = json!({
                "model": model_summary(&m),
                "chargraph": chargraph_report(&m, &p, 1, &c.dot)?,
            });
            let mut opt = opt_config(c);
            opt.grid_oracle = true;
            if *bounds {
                let s = all_bounds(&m, &search_config(c)?, Some(&opt))?;
                out["bounds"] = json!({
                    "basic": s.basic,
                    "improved": s.improved,
                    "fixed_length": s.fixed_length,
                    "pairs": s.pairs,
                });
            }
            if *simulate {
                let r = simulate_report(&m, &builtin_code(&m, *k, Coder::Huffman)?)?;
                out["simulation"] = serde_json::to_value(&r).unwrap();
            }
            report.set(
                "example diamond",
                json!({ "bounds": bounds, "simulate": simulate, "k": k, "optimizer": opt }),
                out,
            );
        }
    }
    Ok(report.render())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NETFUNC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(text) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::SizeCap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
