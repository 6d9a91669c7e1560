//! `plumb`: upper bounds for basket, flat plumbing and flat plumbing basket
//! numbers of a link, from a braid word or a signed Seifert graph file.
//!
//! Exit codes: 0 success, 1 parse error, 2 all requested theorems
//! inapplicable or a search cap exceeded, 3 internal invariant violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use plumb_core::{
    braid_to_graph_text, construct_valid_pair, delta_flat, enumerate_spanning_trees,
    fpbk_bound_graph, graph_bounds_report, is_valid_pair, matrix_tree_count, parse_braid,
    parse_graph, parse_inline_word, report_json, report_table, BoundsReport, BraidWord, Error,
    Mode, ReportOptions, RootedTree, Sign, SignedMultigraph, DEFAULT_ENUMERATION_CAP,
};

#[derive(Parser)]
#[command(name = "plumb", version, about = "Plumbing-number upper bounds for links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word-level and induced-graph bounds for a braid closure.
    BraidBounds {
        /// Braid file (`strands <n>` / `word <k1> <k2> ...`).
        file: Option<PathBuf>,
        /// Inline word, e.g. --word "1 2 -1 2" (requires --strands).
        #[arg(long)]
        word: Option<String>,
        /// Strand count for --word.
        #[arg(long)]
        strands: Option<usize>,
        /// Pad the word with trivial pairs so every generator carries both signs.
        #[arg(long)]
        auto_insert: bool,
        /// Write the JSON report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Spanning-tree bounds for a signed bipartite graph file.
    GraphBounds {
        file: PathBuf,
        /// Minimize over every spanning tree instead of per-root constructions.
        #[arg(long)]
        exhaustive: bool,
        /// Fix the root vertex by name.
        #[arg(long)]
        root: Option<String>,
        /// Override the boundary component count of the file.
        #[arg(long)]
        components: Option<usize>,
        /// Edge-count cap for exhaustive enumeration.
        #[arg(long)]
        cap: Option<usize>,
        /// Write the JSON report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the edge-swap construction and print the trace and final coloring.
    Tree {
        file: PathBuf,
        /// Root vertex by name (default: first declared vertex).
        #[arg(long)]
        root: Option<String>,
        /// Write the trace as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cross-check spanning-tree counts and print the exhaustive minima.
    Oracle {
        file: PathBuf,
        /// Edge-count cap for enumeration.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Emit the induced graph of a braid closure in the graph file format.
    BraidToGraph {
        file: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 1,
                Error::Cap(_) => 2,
                Error::Internal(_) => 3,
            })
        }
    }
}

fn validated_cap(cap: Option<usize>) -> Result<usize, Error> {
    match cap {
        Some(0) => Err(Error::Parse("--cap must be at least 1".to_string())),
        Some(c) => Ok(c),
        None => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

fn workers_from_env() -> usize {
    std::env::var("PLUMB_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

fn run() -> Result<ExitCode, Error> {
    match Cli::parse().command {
        Command::BraidBounds { file, word, strands, auto_insert, json } => {
            let w = load_braid(file, word, strands)?;
            let opts = ReportOptions {
                auto_insert,
                workers: workers_from_env(),
                ..ReportOptions::default()
            };
            let report = plumb_core::braid_bounds_report(&w, &opts)?;
            emit_report(&report, json)
        }
        Command::GraphBounds { file, exhaustive, root, components, cap, json } => {
            let g = load_graph(&file)?;
            let root = match root {
                Some(name) => Some(g.vertex_index(&name).ok_or_else(|| {
                    Error::Parse(format!("unknown root vertex `{name}`"))
                })?),
                None => None,
            };
            let opts = ReportOptions {
                exhaustive,
                root,
                cap: validated_cap(cap)?,
                workers: workers_from_env(),
                ..ReportOptions::default()
            };
            let report = graph_bounds_report(&g, components, &opts)?;
            emit_report(&report, json)
        }
        Command::Tree { file, root, json } => {
            let g = load_graph(&file)?;
            let root = match root {
                Some(name) => g.vertex_index(&name).ok_or_else(|| {
                    Error::Parse(format!("unknown root vertex `{name}`"))
                })?,
                None => 0,
            };
            cmd_tree(&g, root, json)
        }
        Command::Oracle { file, cap } => {
            let g = load_graph(&file)?;
            cmd_oracle(&g, validated_cap(cap)?)
        }
        Command::BraidToGraph { file, word, strands } => {
            let w = load_braid(file, word, strands)?;
            print!("{}", braid_to_graph_text(&w));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_braid(
    file: Option<PathBuf>,
    word: Option<String>,
    strands: Option<usize>,
) -> Result<BraidWord, Error> {
    let w = match (file, word) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_braid(&text)?
        }
        (None, Some(word)) => {
            let strands = strands
                .ok_or_else(|| Error::Parse("--word requires --strands".to_string()))?;
            parse_inline_word(strands, &word)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse("give either a file or --word, not both".to_string()))
        }
        (None, None) => {
            return Err(Error::Parse("missing input: give a file or --word".to_string()))
        }
    };
    let missing = w.missing_generators();
    if !missing.is_empty() {
        eprintln!(
            "warning: generators {missing:?} never occur; the closure splits and the \
             induced graph is disconnected"
        );
    }
    Ok(w)
}

fn load_graph(path: &PathBuf) -> Result<SignedMultigraph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

fn emit_report(report: &BoundsReport, json: Option<PathBuf>) -> Result<ExitCode, Error> {
    print!("{}", report_table(report));
    if let Some(path) = json {
        fs::write(&path, report_json(report))
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    if report.bounds.iter().all(|b| !b.applicable) {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TraceJson {
    root: String,
    steps: Vec<TraceStepJson>,
    final_tree: Vec<usize>,
    kappa: Vec<KappaJson>,
    flipped: bool,
}

#[derive(Serialize)]
struct TraceStepJson {
    removed: usize,
    inserted: usize,
    eta_before: usize,
    eta_after: usize,
}

#[derive(Serialize)]
struct KappaJson {
    edge: usize,
    sign: Sign,
}

fn edge_label(g: &SignedMultigraph, id: usize) -> String {
    let e = g.edge(id);
    format!("{} ({}-{} {})", id, g.vertex_name(e.u), g.vertex_name(e.v), e.sign)
}

fn cmd_tree(g: &SignedMultigraph, root: usize, json: Option<PathBuf>) -> Result<ExitCode, Error> {
    if !g.is_connected() {
        return Err(Error::Cap("graph is not connected".to_string()));
    }
    let trace = construct_valid_pair(g, root)?;
    println!("root: {}", g.vertex_name(root));
    for (i, step) in trace.steps.iter().enumerate() {
        println!(
            "step {}: remove {}, insert {}, eta {} -> {}",
            i + 1,
            edge_label(g, step.removed),
            edge_label(g, step.inserted),
            step.eta_before,
            step.eta_after
        );
    }
    if trace.steps.is_empty() {
        println!("no swaps needed: every fundamental path already alternates");
    }
    let tree = &trace.final_tree;
    println!("final tree edges: {:?}", tree.tree_edges());
    let kappa = plumb_core::depth_coloring(g, tree, false);
    println!("depth coloring (unflipped):");
    for &(id, sign) in kappa.entries() {
        println!("  {}: {}", edge_label(g, id), sign);
    }
    if let Some(path) = json {
        let out = TraceJson {
            root: g.vertex_name(root).to_string(),
            steps: trace
                .steps
                .iter()
                .map(|s| TraceStepJson {
                    removed: s.removed,
                    inserted: s.inserted,
                    eta_before: s.eta_before,
                    eta_after: s.eta_after,
                })
                .collect(),
            final_tree: tree.tree_edges().to_vec(),
            kappa: kappa.entries().iter().map(|&(edge, sign)| KappaJson { edge, sign }).collect(),
            flipped: kappa.flipped,
        };
        let mut text = serde_json::to_string_pretty(&out)
            .map_err(|e| Error::Internal(e.to_string()))?;
        text.push('\n');
        fs::write(&path, text)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(g: &SignedMultigraph, cap: usize) -> Result<ExitCode, Error> {
    let trees = enumerate_spanning_trees(g, cap)?;
    let counted = matrix_tree_count(g);
    println!("spanning trees (enumerated): {}", trees.len());
    println!("spanning trees (determinant): {counted}");
    if trees.len() as u64 != counted {
        return Err(Error::Internal(format!(
            "enumeration found {} trees but the determinant gives {counted}",
            trees.len()
        )));
    }

    let mut best_delta: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    for tree in &trees {
        let (d, witness) = delta_flat(g, tree, cap)?;
        let candidate = (d, tree.clone(), witness);
        if best_delta.as_ref().is_none_or(|b| candidate < *b) {
            best_delta = Some(candidate);
        }
    }
    if let Some((d, tree, witness)) = best_delta {
        println!("min companion count (flat plumbing): {d} on tree {tree:?} with companions {witness:?}");
    }

    let mut best: Option<(i64, Vec<usize>, usize)> = None;
    for tree in &trees {
        for root in 0..g.vertex_count() {
            let t = RootedTree::from_edge_ids(g, root, tree)?;
            if is_valid_pair(g, &t) {
                let budget = plumb_core::annulus_budget(g, &t)?;
                let key = (budget.gamma as i64 - budget.delta as i64, tree.clone(), root);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    match best {
        Some((gd, tree, root)) => println!(
            "min gamma-delta (flat plumbing basket): {gd} on tree {tree:?} rooted at {}",
            g.vertex_name(root)
        ),
        None => println!("no valid (tree, root) pair found"),
    }
    // Matching bound for the record.
    if g.is_connected() && g.is_bipartite() && g.vertex_count() > 0 {
        let budget = fpbk_bound_graph(g, Mode::Exhaustive, None, cap, workers_from_env())?;
        println!("exhaustive flat plumbing basket bound: {}", budget.bound);
    }
    Ok(ExitCode::SUCCESS)
}
