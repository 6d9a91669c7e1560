//! Upper bounds for the basket, flat plumbing and flat plumbing basket
//! numbers of a link, computed from a braid word or from a signed bipartite
//! Seifert graph.
//!
//! The pipeline: [`braid`] parses words and emits the induced graph of the
//! closure; [`graph`] models signed bipartite multigraphs with rooted
//! spanning trees, depth colorings and fundamental paths; [`treesearch`]
//! runs the potential-increasing edge-swap construction and enumerates
//! spanning trees for exhaustive minimization; [`bounds`] evaluates the
//! bound formulas with their witnesses; [`report`] assembles the CLI-facing
//! tables and JSON.

pub mod bounds;
pub mod braid;
pub mod error;
pub mod graph;
pub mod report;
pub mod treesearch;

pub use bounds::{
    annulus_budget, annulus_budget_with_flip, basket_bound, companions_feasible, delta_flat,
    fp_bound_braid, fp_bound_graph, fpbk_bound_graph, fpbk_bound_signed, fpbk_bound_simple,
    genus_chain, AnnulusBudget, FlatBound, GenusChain, Mode,
};
pub use braid::{
    closure_components, find_disc_prefix, free_reduce, generator_counts, induced_graph,
    insert_trivial_pairs, parse_braid, parse_inline_word, render_braid, BraidWord,
    DiscPrefixSplit, GeneratorCounts,
};
pub use error::{Error, Result};
pub use graph::{
    depth_coloring, is_alternating, is_valid_pair, parse_graph, path_sign, prune_pendants,
    render_graph, seifert_stats, Edge, EdgeColoring, RootedTree, SeifertStats, Sign,
    SignedMultigraph,
};
pub use report::{
    braid_bounds_report, braid_to_graph_text, graph_bounds_report, report_json, report_table,
    BoundEntry, BoundsReport, InputSummary, ReportOptions, Witness,
};
pub use treesearch::{
    construct_valid_pair, construct_valid_pair_any_root, enumerate_spanning_trees, eta,
    matrix_tree_count, offending_coedges, parallel_min_by_key, swap_step, SwapStep, SwapTrace,
    DEFAULT_ENUMERATION_CAP,
};
