//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (and, where a bound applies, the bound holds) |
//! | 1 | other failure (bad parameters, instance too large) |
//! | 2 | unreadable or malformed input |
//! | 3 | disconnected graph |
//! | 4 | invalid decomposition, or tree that is not a spanning tree (or not a k-spanner) |
//! | 5 | measured stretch exceeds the bound |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tbspan_core::generators::{random_connected, random_tree, Classic, Snowflake};
use tbspan_core::graph::is_connected;
use tbspan_core::spanner::{build_from_multiplicative, build_spanner};
use tbspan_core::tree_metrics::{nested_sequence, pbt_bruteforce};
use tbspan_core::treedec::{self, heuristic_layering_decomposition, Violation};
use tbspan_core::verify::{self, Ratio};
use tbspan_core::{BuildOptions, CheckLevel, Error, SubtreeOfGraph, TreeDecomposition, VerifyMode};

use crate::formats::gr::{self, LabeledGraph};
use crate::formats::td::{parse_td, write_td};
use crate::formats::{Format, ParseError};
use crate::report::{self, BuildReport, GraphSummary, Provenance, Stretch, Timings, VerifyReport, SCHEMA, TOOL, VERSION};

#[derive(Debug, Parser)]
#[command(name = "tbspan", version, about = "Additive tree spanners from tree decompositions of small breadth")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an additive tree spanner and report its stretch against the bound.
    Build(BuildArgs),
    /// Measure the stretch of a given spanning tree.
    Verify(VerifyArgs),
    /// Tree decomposition utilities.
    #[command(subcommand)]
    Decomp(DecompCommand),
    /// Nested sequence depth d(T) and perfect-binary-tree minor depth of a tree.
    TreeMetrics(TreeMetricsArgs),
    /// Generate instances.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct Verification {
    /// Check every vertex pair (default).
    #[arg(long, conflicts_with = "sampled")]
    exact: bool,
    /// Check this many random vertex pairs instead.
    #[arg(long, value_name = "PAIRS")]
    sampled: Option<usize>,
    /// Seed for sampling; echoed in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Verification {
    fn mode(&self) -> VerifyMode {
        match self.sampled {
            Some(pairs) => VerifyMode::Sampled { seed: self.seed, pairs },
            None => VerifyMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Off,
    Final,
    PerLevel,
}

impl From<CheckArg> for CheckLevel {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Off => CheckLevel::Off,
            CheckArg::Final => CheckLevel::Final,
            CheckArg::PerLevel => CheckLevel::PerLevel,
        }
    }
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Graph file (PACE .gr or edge list).
    graph: PathBuf,
    /// Tree decomposition (.td); without it a layering decomposition is computed.
    #[arg(long, conflicts_with = "spanner")]
    td: Option<PathBuf>,
    /// Multiplicative tree spanner to derive the decomposition from.
    #[arg(long)]
    spanner: Option<PathBuf>,
    /// Stretch of --spanner; defaults to its measured stretch rounded up.
    #[arg(long, requires = "spanner")]
    k: Option<u32>,
    #[command(flatten)]
    verification: Verification,
    /// Defaults to per-level below 5000 vertices, final above.
    #[arg(long, value_enum)]
    check_level: Option<CheckArg>,
    /// Write the spanning tree here.
    #[arg(long)]
    out_tree: Option<PathBuf>,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    out_report: Option<PathBuf>,
    /// Write the spanning tree as Graphviz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    graph: PathBuf,
    /// Spanning tree, as PACE ids or graph labels.
    tree: PathBuf,
    /// Additive bound to check; exit 5 if exceeded.
    #[arg(long)]
    bound: Option<u32>,
    #[command(flatten)]
    verification: Verification,
    #[arg(long)]
    out_report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum DecompCommand {
    /// Check the three decomposition conditions; exit 4 when any fails.
    Validate { graph: PathBuf, td: PathBuf },
    /// Largest bag radius.
    Breadth { graph: PathBuf, td: PathBuf },
    /// Contract edges between nested bags.
    Normalize {
        td: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition whose bags are radius-⌈k/2⌉ balls of a multiplicative tree k-spanner.
    FromSpanner {
        graph: PathBuf,
        tree: PathBuf,
        /// Defaults to the measured stretch rounded up.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct TreeMetricsArgs {
    tree: PathBuf,
    /// Skip the quadratic brute-force minor computation (skipped anyway
    /// above 500 nodes).
    #[arg(long)]
    skip_pbt: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Graph output; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decomposition output (snowflake only).
    #[arg(long, global = true)]
    td_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t, global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, Subcommand, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
enum Family {
    /// Snowflake G_k with its triangle decomposition.
    Snowflake { k: u32 },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    BinaryTree { depth: u32 },
    /// Uniform labeled tree.
    RandomTree { n: usize },
    /// Random tree plus random extra edges.
    RandomConnected { n: usize, m: usize },
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<ParseError>() || cause.is::<std::io::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Disconnected => 3,
                Error::InvalidDecomposition(_)
                | Error::BagCountMismatch { .. }
                | Error::BagVertexOutOfRange { .. }
                | Error::OrderMismatch { .. }
                | Error::EmptyBag(_)
                | Error::EmptyBagIntersection(_)
                | Error::NotATree
                | Error::NotASubtree
                | Error::InvalidSubtree(_)
                | Error::NotSpanningTree
                | Error::StretchExceeded { .. } => 4,
                Error::NotAdditive { .. } | Error::TooFar { .. } | Error::InvariantViolated { .. } => 5,
                _ => 1,
            };
        }
    }
    1
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Decomp(cmd) => cmd_decomp(cmd),
        Command::TreeMetrics(args) => cmd_tree_metrics(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    gr::parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_td(path: &Path) -> Result<TreeDecomposition> {
    parse_td(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_tree(path: &Path, host: &LabeledGraph) -> Result<SubtreeOfGraph> {
    let edges = gr::parse_tree_edges(&read(path)?, host).with_context(|| format!("parsing {}", path.display()))?;
    if !verify::is_spanning_tree_edges(&host.graph, &edges) {
        return Err(Error::NotSpanningTree).with_context(|| format!("{} is not a spanning tree of the graph", path.display()));
    }
    Ok(SubtreeOfGraph::new(&host.graph, 0..host.graph.order(), edges)?)
}

fn summary(lg: &LabeledGraph) -> GraphSummary {
    GraphSummary { n: lg.graph.order(), m: lg.graph.size() }
}

fn emit(json: &str, out: Option<&Path>) -> Result<()> {
    print!("{json}");
    if let Some(path) = out {
        write(path, json)?;
    }
    Ok(())
}

fn measured_k(lg: &LabeledGraph, t: &SubtreeOfGraph) -> Result<u32> {
    Ok(verify::multiplicative_stretch(&lg.graph, t)?.ceil())
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    let lg = load_graph(&args.graph)?;
    let g = &lg.graph;
    if !is_connected(g)? {
        return Err(Error::Disconnected).context("graph is disconnected");
    }
    let check = args.check_level.map_or(BuildOptions::for_order(g.order()).check, CheckLevel::from);
    let opts = BuildOptions { check, verify: args.verification.mode() };

    let start = Instant::now();
    let (tree, report, trace, provenance, decomposition_ms) = if let Some(path) = &args.spanner {
        let t = load_tree(path, &lg)?;
        let k = match args.k {
            Some(k) => k,
            None => measured_k(&lg, &t)?,
        };
        let (tree, report, trace) = build_from_multiplicative(g, &t, k, opts)?;
        (tree, report, trace, Provenance::MultiplicativeSpanner, 0.0)
    } else {
        let (td, provenance) = match &args.td {
            Some(path) => (load_td(path)?, Provenance::Decomposition),
            None => (heuristic_layering_decomposition(g)?, Provenance::Heuristic),
        };
        let decomposition_ms = start.elapsed().as_secs_f64() * 1e3;
        let (tree, report, trace) = build_spanner(g, &td, opts)?;
        (tree, report, trace, provenance, decomposition_ms)
    };
    let build_ms = start.elapsed().as_secs_f64() * 1e3 - decomposition_ms;

    if let Some(path) = &args.out_tree {
        write(path, &gr::write_tree(&tree, &lg.labels, args.format))?;
    }
    if let Some(path) = &args.dot {
        write(path, &gr::write_dot(&tree, &lg.labels))?;
    }
    let bound = report.bound_checked.expect("build reports carry a bound");
    let holds = report.bound_holds == Some(true);
    let out = BuildReport {
        schema: SCHEMA,
        tool: TOOL,
        version: VERSION,
        command: "build",
        seed: args.verification.seed,
        provenance,
        check_level: check,
        graph: summary(&lg),
        bound,
        bound_holds: holds,
        stretch: Stretch::new(report, &lg.labels),
        trace,
        timings: args.timings.then_some(Timings { decomposition_ms, build_ms }),
    };
    emit(&report::to_json(&out), args.out_report.as_deref())?;
    if holds {
        Ok(0)
    } else {
        eprintln!("error: measured additive stretch {} exceeds bound {bound}", out.stretch.report.max_additive);
        Ok(5)
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let lg = load_graph(&args.graph)?;
    let t = load_tree(&args.tree, &lg)?;
    let mut report = verify::additive_stretch(&lg.graph, &t, args.verification.mode())?;
    if let Some(bound) = args.bound {
        report = report.with_bound(bound);
    }
    let violated = report.bound_holds == Some(false);
    let out = VerifyReport {
        schema: SCHEMA,
        tool: TOOL,
        version: VERSION,
        command: "verify",
        seed: args.verification.seed,
        graph: summary(&lg),
        stretch: Stretch::new(report, &lg.labels),
    };
    emit(&report::to_json(&out), args.out_report.as_deref())?;
    if violated {
        eprintln!(
            "error: additive stretch {} exceeds bound {}",
            out.stretch.report.max_additive,
            args.bound.unwrap_or_default()
        );
        return Ok(5);
    }
    Ok(0)
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    schema: u32,
    command: &'static str,
    valid: bool,
    violations: &'a [Violation],
    messages: Vec<String>,
}

#[derive(Serialize)]
struct DecompOut {
    schema: u32,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    breadth: Option<u32>,
    bags: usize,
    max_bag_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<PathBuf>,
}

fn decomp_out(command: &'static str, td: &TreeDecomposition) -> DecompOut {
    DecompOut { schema: SCHEMA, command, k: None, breadth: None, bags: td.node_count(), max_bag_size: td.max_bag_size(), out: None }
}

/// Writes `td` to `out`, or to stdout when absent; returns whether the
/// JSON summary still has stdout to itself.
fn place_td(td: &TreeDecomposition, out: Option<&Path>) -> Result<bool> {
    match out {
        Some(path) => write(path, &write_td(td)).map(|_| true),
        None => {
            print!("{}", write_td(td));
            Ok(false)
        }
    }
}

fn cmd_decomp(cmd: DecompCommand) -> Result<u8> {
    match cmd {
        DecompCommand::Validate { graph, td } => {
            let lg = load_graph(&graph)?;
            let td = load_td(&td)?;
            let violations = treedec::validate(&td, &lg.graph)?;
            let out = ValidateOut {
                schema: SCHEMA,
                command: "decomp validate",
                valid: violations.is_empty(),
                violations: &violations,
                messages: violations.iter().map(ToString::to_string).collect(),
            };
            print!("{}", report::to_json(&out));
            Ok(if violations.is_empty() { 0 } else { 4 })
        }
        DecompCommand::Breadth { graph, td } => {
            let lg = load_graph(&graph)?;
            let td = load_td(&td)?;
            let rho = treedec::breadth_bfs(&td, &lg.graph)?;
            let out = DecompOut { breadth: Some(rho), ..decomp_out("decomp breadth", &td) };
            print!("{}", report::to_json(&out));
            Ok(0)
        }
        DecompCommand::Normalize { td, out } => {
            let norm = treedec::normalize(&load_td(&td)?);
            if place_td(&norm, out.as_deref())? {
                print!("{}", report::to_json(&DecompOut { out, ..decomp_out("decomp normalize", &norm) }));
            }
            Ok(0)
        }
        DecompCommand::FromSpanner { graph, tree, k, out } => {
            let lg = load_graph(&graph)?;
            let t = load_tree(&tree, &lg)?;
            let measured = verify::multiplicative_stretch(&lg.graph, &t)?;
            let k = k.unwrap_or(measured.ceil());
            if k == 0 {
                return Err(Error::ZeroStretch.into());
            }
            if measured > Ratio::new(k, 1) {
                let witness = verify::additive_stretch(&lg.graph, &t, VerifyMode::Exact)?.witness_mult;
                return Err(Error::StretchExceeded { k, measured, witness }.into());
            }
            let td = treedec::from_multiplicative_spanner(&lg.graph, &t, k)?;
            if place_td(&td, out.as_deref())? {
                let rho = treedec::breadth_bfs(&td, &lg.graph)?;
                let summary = DecompOut { k: Some(k), breadth: Some(rho), out, ..decomp_out("decomp from-spanner", &td) };
                print!("{}", report::to_json(&summary));
            }
            Ok(0)
        }
    }
}

const PBT_MAX_ORDER: usize = 500;

#[derive(Serialize)]
struct TreeMetricsOut {
    schema: u32,
    command: &'static str,
    n: usize,
    d: usize,
    level_sizes: Vec<usize>,
    levels: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pbt: Option<u32>,
}

fn cmd_tree_metrics(args: TreeMetricsArgs) -> Result<u8> {
    let lg = load_graph(&args.tree)?;
    let seq = nested_sequence(&lg.graph).with_context(|| format!("{} is not a tree", args.tree.display()))?;
    let pbt = if args.skip_pbt || lg.graph.order() > PBT_MAX_ORDER { None } else { Some(pbt_bruteforce(&lg.graph)?) };
    let out = TreeMetricsOut {
        schema: SCHEMA,
        command: "tree-metrics",
        n: lg.graph.order(),
        d: seq.d,
        level_sizes: seq.level_sizes(),
        levels: seq.levels.iter().map(|l| l.iter().map(|&v| lg.labels[v].clone()).collect()).collect(),
        pbt,
    };
    print!("{}", report::to_json(&out));
    Ok(0)
}

#[derive(Serialize)]
struct GenOut {
    schema: u32,
    command: &'static str,
    #[serde(flatten)]
    family: Family,
    seed: u64,
    n: usize,
    m: usize,
    out: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    td_out: Option<PathBuf>,
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let mut td = None;
    let graph = match args.family {
        Family::Snowflake { k } => {
            let (g, decomposition) = Snowflake::new(k)?.build();
            td = Some(decomposition);
            g
        }
        Family::Path { n } => Classic::Path(n).build()?,
        Family::Cycle { n } => Classic::Cycle(n).build()?,
        Family::Star { leaves } => Classic::Star(leaves).build()?,
        Family::Complete { n } => Classic::Complete(n).build()?,
        Family::Grid { rows, cols } => Classic::Grid(rows, cols).build()?,
        Family::BinaryTree { depth } => Classic::CompleteBinaryTree(depth).build()?,
        Family::RandomTree { n } => random_tree(n, args.seed)?,
        Family::RandomConnected { n, m } => random_connected(n, m, args.seed)?,
    };
    if args.td_out.is_some() && td.is_none() {
        bail!(Error::InvalidParameter("--td-out is only available for snowflake".into()));
    }
    let lg = LabeledGraph::numbered(graph);
    let text = gr::write_graph(&lg.graph, &lg.labels, args.format);
    if let (Some(path), Some(td)) = (&args.td_out, &td) {
        write(path, &write_td(td))?;
    }
    match args.out {
        Some(out) => {
            write(&out, &text)?;
            let summary = GenOut {
                schema: SCHEMA,
                command: "gen",
                family: args.family,
                seed: args.seed,
                n: lg.graph.order(),
                m: lg.graph.size(),
                out,
                td_out: args.td_out,
            };
            print!("{}", report::to_json(&summary));
        }
        None => print!("{text}"),
    }
    Ok(0)
}
