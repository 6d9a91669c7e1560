//! Bound reports: the fixed-order tables behind `braid-bounds` and
//! `graph-bounds`, and their stable JSON form.
//!
//! A report row never silently understates: a theorem that does not apply
//! to the input is marked inapplicable with a reason instead of reporting 0.
//! The three plumbing numbers themselves satisfy a chain of inequalities,
//! but the computed rows are independent upper bounds and are printed
//! without asserting any order between them.

use serde::Serialize;

use crate::bounds::{
    basket_bound, fp_bound_braid, fp_bound_graph, fpbk_bound_graph, fpbk_bound_signed,
    fpbk_bound_simple, genus_chain, Mode,
};
use crate::braid::{closure_components, induced_graph, render_braid, BraidWord};
use crate::error::{Error, Result};
use crate::graph::{prune_pendants, seifert_stats, SeifertStats, SignedMultigraph};

/// Default spanning-tree enumeration cap for exhaustive searches.
pub use crate::treesearch::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub input: InputSummary,
    pub stats: Option<SeifertStats>,
    pub bounds: Vec<BoundEntry>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSummary {
    Braid { strands: usize, word: Vec<i32> },
    Graph { vertices: usize, edges: usize, components: Option<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Witness data for a bound row. Graph rows carry the (tree, root, flip)
/// and the two disagreement sets; braid rows carry the rotation of the
/// disc-prefix split. Flat plumbing rows reuse `set_B` for the companion
/// tree edges.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flipped: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(rename = "set_B", skip_serializing_if = "Option::is_none")]
    pub set_b: Option<Vec<usize>>,
    #[serde(rename = "set_C", skip_serializing_if = "Option::is_none")]
    pub set_c: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<usize>,
}

impl BoundEntry {
    fn applicable(name: &str, value: usize, witness: Option<Witness>) -> Self {
        BoundEntry {
            name: name.to_string(),
            applicable: true,
            value: Some(value),
            reason: None,
            witness,
        }
    }

    fn inapplicable(name: &str, reason: impl Into<String>) -> Self {
        BoundEntry {
            name: name.to_string(),
            applicable: false,
            value: None,
            reason: Some(reason.into()),
            witness: None,
        }
    }
}

/// Options shared by the report builders.
#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub exhaustive: bool,
    pub root: Option<usize>,
    pub auto_insert: bool,
    pub cap: usize,
    pub workers: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exhaustive: false,
            root: None,
            auto_insert: false,
            cap: DEFAULT_ENUMERATION_CAP,
            workers: 1,
        }
    }
}

/// Builds the braid report: the word-level rows (basket, flat plumbing,
/// both flat plumbing basket variants) followed by the graph-side rows on
/// the induced graph of the closure, with the component count taken from
/// the strand permutation.
pub fn braid_bounds_report(w: &BraidWord, opts: &ReportOptions) -> Result<BoundsReport> {
    let mut bounds = Vec::new();
    let mut notes = Vec::new();

    match basket_bound(w) {
        Some((m, split)) => bounds.push(BoundEntry::applicable(
            "basket",
            m,
            Some(Witness { rotation: Some(split.rotation), ..Witness::default() }),
        )),
        None => bounds.push(BoundEntry::inapplicable(
            "basket",
            "no cyclic rotation exposes a positive prefix using each generator once",
        )),
    }

    bounds.push(BoundEntry::applicable("fp_braid", fp_bound_braid(w), None));

    match fpbk_bound_simple(w) {
        Some((value, split)) => bounds.push(BoundEntry::applicable(
            "fpbk_simple",
            value,
            Some(Witness { rotation: Some(split.rotation), ..Witness::default() }),
        )),
        None => bounds.push(BoundEntry::inapplicable(
            "fpbk_simple",
            "no cyclic rotation exposes a positive prefix using each generator once",
        )),
    }

    match fpbk_bound_signed(w, opts.auto_insert) {
        Ok(value) => bounds.push(BoundEntry::applicable("fpbk_signed", value, None)),
        Err(e) => bounds.push(BoundEntry::inapplicable("fpbk_signed", e.to_string())),
    }

    notes.push(
        "word bounds depend on the braid presentation and the chosen cyclic rotation; \
         other presentations of the same link may give different values"
            .to_string(),
    );
    notes.push(CHAIN_NOTE.to_string());

    let graph = induced_graph(w);
    let l = closure_components(w);
    let missing = w.missing_generators();
    let graph_opts = ReportOptions { root: None, ..*opts };
    let (stats, graph_rows, graph_notes) = if missing.is_empty() && graph.vertex_count() > 0 {
        let (pruned, removed) = prune_pendants(&graph);
        if removed > 0 {
            notes.push(prune_note(removed));
        }
        graph_side_rows(&pruned, Some(l), &graph_opts)?
    } else {
        let reason = format!(
            "induced graph is disconnected (generators {:?} never occur)",
            missing
        );
        (
            None,
            vec![
                BoundEntry::inapplicable("fp_graph_constructive", reason.clone()),
                BoundEntry::inapplicable("fpbk_graph_constructive", reason),
            ],
            Vec::new(),
        )
    };
    bounds.extend(graph_rows);
    notes.extend(graph_notes);

    Ok(BoundsReport {
        input: InputSummary::Braid { strands: w.strands(), word: w.letters().to_vec() },
        stats,
        bounds,
        notes,
    })
}

/// Builds the graph report. Pendant vertices are pruned first (each removal
/// is an untwisting move that keeps the boundary link); all ids in the
/// witnesses refer to the pruned graph. The component count comes from the
/// file unless overridden.
pub fn graph_bounds_report(
    g: &SignedMultigraph,
    components_override: Option<usize>,
    opts: &ReportOptions,
) -> Result<BoundsReport> {
    let input = InputSummary::Graph {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g.components_hint,
    };
    let l = components_override.or(g.components_hint);
    let mut notes = Vec::new();
    let (pruned, removed) = prune_pendants(g);
    if removed > 0 {
        notes.push(prune_note(removed));
    }
    if !pruned.is_connected() {
        return Err(Error::cap("graph is not connected".to_string()));
    }
    let root = match opts.root {
        Some(r) => Some(map_root(g, &pruned, r)?),
        None => None,
    };
    let opts = ReportOptions { root, ..*opts };
    let (stats, rows, more_notes) = graph_side_rows(&pruned, l, &opts)?;
    if l.is_none() {
        notes.push(
            "component count not supplied; stats and genus rows omitted".to_string(),
        );
    }
    notes.extend(more_notes);
    notes.push(CHAIN_NOTE.to_string());
    Ok(BoundsReport { input, stats, bounds: rows, notes })
}

/// The three true plumbing numbers are ordered; their computed upper bounds
/// are not, so reports state the order once instead of asserting it rowwise.
const CHAIN_NOTE: &str = "the basket, flat plumbing and flat plumbing basket numbers \
     satisfy bk <= fp <= fpbk; the rows above are independent upper bounds for them and \
     carry no such order";

fn prune_note(removed: usize) -> String {
    format!(
        "pruned {removed} pendant {} before computing bounds; witness ids refer to the \
         pruned graph",
        if removed == 1 { "vertex" } else { "vertices" }
    )
}

fn map_root(
    original: &SignedMultigraph,
    pruned: &SignedMultigraph,
    root: usize,
) -> Result<usize> {
    let name = original.vertex_name(root);
    pruned.vertex_index(name).ok_or_else(|| {
        Error::cap(format!("root vertex `{name}` was pruned away as a pendant"))
    })
}

/// The shared graph-side rows: constructive bounds always, exhaustive rows
/// when requested, and the genus restatements when `l` is known and
/// consistent.
fn graph_side_rows(
    g: &SignedMultigraph,
    l: Option<usize>,
    opts: &ReportOptions,
) -> Result<(Option<SeifertStats>, Vec<BoundEntry>, Vec<String>)> {
    let mut rows = Vec::new();
    let notes = Vec::new();

    let fp_con = fp_bound_graph(g, Mode::Constructive, opts.cap, opts.workers)?;
    rows.push(BoundEntry::applicable(
        "fp_graph_constructive",
        fp_con.value,
        Some(Witness {
            tree_edges: Some(fp_con.tree_edges.clone()),
            delta: Some(fp_con.delta()),
            set_b: Some(fp_con.companions.clone()),
            ..Witness::default()
        }),
    ));

    let fpbk_con = fpbk_bound_graph(g, Mode::Constructive, opts.root, opts.cap, opts.workers)?;
    rows.push(BoundEntry::applicable(
        "fpbk_graph_constructive",
        fpbk_con.bound,
        Some(budget_witness(g, &fpbk_con)),
    ));

    let mut best_fp = fp_con;
    let mut best_fpbk = fpbk_con;
    if opts.exhaustive {
        let fp_ex = fp_bound_graph(g, Mode::Exhaustive, opts.cap, opts.workers)?;
        rows.push(BoundEntry::applicable(
            "fp_graph_exhaustive",
            fp_ex.value,
            Some(Witness {
                tree_edges: Some(fp_ex.tree_edges.clone()),
                delta: Some(fp_ex.delta()),
                set_b: Some(fp_ex.companions.clone()),
                ..Witness::default()
            }),
        ));
        let fpbk_ex = fpbk_bound_graph(g, Mode::Exhaustive, opts.root, opts.cap, opts.workers)?;
        rows.push(BoundEntry::applicable(
            "fpbk_graph_exhaustive",
            fpbk_ex.bound,
            Some(budget_witness(g, &fpbk_ex)),
        ));
        best_fp = fp_ex;
        best_fpbk = fpbk_ex;
    }

    let stats = l.and_then(|l| seifert_stats(g, l).ok());
    if let Some(stats) = stats {
        let chain = genus_chain(
            &stats,
            best_fp.delta(),
            best_fpbk.gamma as i64 - best_fpbk.delta as i64,
            None,
        );
        rows.push(BoundEntry::applicable("fp_genus", chain.fp_upper, None));
        rows.push(BoundEntry::applicable("fpbk_genus", chain.fpbk_upper, None));
    }
    Ok((stats, rows, notes))
}

fn budget_witness(g: &SignedMultigraph, budget: &crate::bounds::AnnulusBudget) -> Witness {
    Witness {
        root: Some(g.vertex_name(budget.tree.root()).to_string()),
        tree_edges: Some(budget.tree.tree_edges().to_vec()),
        flipped: Some(budget.kappa.flipped),
        gamma: Some(budget.gamma),
        delta: Some(budget.delta),
        set_b: Some(budget.set_b.clone()),
        set_c: Some(budget.set_c.clone()),
        rotation: None,
    }
}

/// Emits the induced graph of a braid closure in the graph file format,
/// with the component count filled in from the strand permutation.
pub fn braid_to_graph_text(w: &BraidWord) -> String {
    crate::graph::render_graph(&induced_graph(w))
}

/// Stable JSON form of a report: pretty-printed with a trailing newline,
/// byte-identical across runs for identical inputs.
pub fn report_json(report: &BoundsReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// The fixed-order text table for stdout.
pub fn report_table(report: &BoundsReport) -> String {
    let mut out = String::new();
    match &report.input {
        InputSummary::Braid { strands, word } => {
            let w = BraidWord::new(*strands, word.clone()).expect("report word is valid");
            out.push_str(&format!(
                "input: {}\n",
                render_braid(&w).trim_end().replace('\n', "; ")
            ));
        }
        InputSummary::Graph { vertices, edges, components } => {
            out.push_str(&format!("input: graph with {vertices} vertices, {edges} edges"));
            if let Some(l) = components {
                out.push_str(&format!(", components {l}"));
            }
            out.push('\n');
        }
    }
    if let Some(stats) = &report.stats {
        out.push_str(&format!(
            "stats: s={} c={} l={} g_c={}\n",
            stats.s, stats.c, stats.l, stats.g_c
        ));
    }
    for row in &report.bounds {
        if row.applicable {
            out.push_str(&format!(
                "{:<24} {}",
                row.name,
                row.value.expect("applicable row has a value")
            ));
            if let Some(w) = &row.witness {
                let mut parts = Vec::new();
                if let Some(rot) = w.rotation {
                    parts.push(format!("rotation={rot}"));
                }
                if let Some(root) = &w.root {
                    parts.push(format!("root={root}"));
                }
                if let Some(tree) = &w.tree_edges {
                    parts.push(format!("tree={tree:?}"));
                }
                if let Some(flipped) = w.flipped {
                    parts.push(format!("flipped={flipped}"));
                }
                if let Some(gamma) = w.gamma {
                    parts.push(format!("gamma={gamma}"));
                }
                if let Some(delta) = w.delta {
                    parts.push(format!("delta={delta}"));
                }
                if !parts.is_empty() {
                    out.push_str(&format!("  ({})", parts.join(", ")));
                }
            }
            out.push('\n');
        } else {
            out.push_str(&format!(
                "{:<24} inapplicable: {}\n",
                row.name,
                row.reason.as_deref().unwrap_or("")
            ));
        }
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn braid_report_rows_and_order() {
        let w = BraidWord::new(3, vec![1, 2, 1, 2]).unwrap();
        let report = braid_bounds_report(&w, &ReportOptions::default()).unwrap();
        let names: Vec<&str> = report.bounds.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "basket",
                "fp_braid",
                "fpbk_simple",
                "fpbk_signed",
                "fp_graph_constructive",
                "fpbk_graph_constructive",
                "fp_genus",
                "fpbk_genus"
            ]
        );
        assert_eq!(report.bounds[0].value, Some(2));
        assert_eq!(report.bounds[1].value, Some(6));
        // Both signs are missing for every generator, so the signed row
        // needs auto-insert.
        assert!(!report.bounds[3].applicable);
        let with_insert = braid_bounds_report(
            &w,
            &ReportOptions { auto_insert: true, ..ReportOptions::default() },
        )
        .unwrap();
        assert_eq!(with_insert.bounds[3].value, Some(6));
    }

    #[test]
    fn braid_report_marks_inapplicable_rows() {
        let w = BraidWord::new(2, vec![-1]).unwrap();
        let report = braid_bounds_report(&w, &ReportOptions::default()).unwrap();
        assert!(!report.bounds[0].applicable);
        assert!(!report.bounds[2].applicable);
        assert!(report.bounds[1].applicable);
    }

    #[test]
    fn graph_report_prunes_and_notes() {
        let g = parse_graph(
            "vertex v\nvertex v1\nvertex v2\nvertex v3\nvertex v4\nvertex v5\nvertex v6\nvertex v7\n\
             edge v v1 +\nedge v v2 +\nedge v v3 +\nedge v v4 +\n\
             edge v2 v5 -\nedge v2 v6 -\nedge v3 v6 +\nedge v4 v6 +\n\
             edge v5 v7 -\nedge v6 v7 -\ncomponents 2\n",
        )
        .unwrap();
        let report = graph_bounds_report(&g, None, &ReportOptions::default()).unwrap();
        assert!(report.notes.iter().any(|n| n.contains("pruned 1 pendant")));
        assert_eq!(report.stats.unwrap().s, 7);
    }

    #[test]
    fn graph_report_without_components_drops_stats_and_genus() {
        let g = parse_graph("vertex a\nvertex b\nedge a b +\nedge a b -\n").unwrap();
        let report = graph_bounds_report(&g, None, &ReportOptions::default()).unwrap();
        assert!(report.stats.is_none());
        assert!(report.bounds.iter().all(|b| !b.name.contains("genus")));
        assert!(report.notes.iter().any(|n| n.contains("component count not supplied")));
        // Supplying --components restores them.
        let with_l = graph_bounds_report(&g, Some(2), &ReportOptions::default()).unwrap();
        assert!(with_l.stats.is_some());
        assert!(with_l.bounds.iter().any(|b| b.name == "fp_genus"));
    }

    #[test]
    fn json_is_stable_across_runs() {
        let w = BraidWord::new(3, vec![1, 2, -1, 2, 2, 1, 1, 1]).unwrap();
        let a = report_json(&braid_bounds_report(&w, &ReportOptions::default()).unwrap());
        let b = report_json(&braid_bounds_report(&w, &ReportOptions::default()).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn table_renders_every_row() {
        let w = BraidWord::new(3, vec![1, 2, 1, 2]).unwrap();
        let report = braid_bounds_report(&w, &ReportOptions::default()).unwrap();
        let table = report_table(&report);
        for row in &report.bounds {
            assert!(table.contains(&row.name));
        }
    }
}
