//! Spanning-tree search: the constructive edge-swap algorithm that makes
//! every fundamental path alternate under the depth coloring, plus
//! exhaustive enumeration and the Kirchhoff count used to cross-check it.
//!
//! The swap step targets a coedge whose least common ancestor is interior
//! to its fundamental path. Replacing the ancestor's child edge on the
//! strictly shorter side by the coedge strictly increases the potential
//! `eta` (the sum of vertex depths), so the loop terminates.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{is_valid_pair, RootedTree, SignedMultigraph};

/// Default ceiling on `|E|` for exhaustive spanning-tree enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Sum of vertex depths of a rooted spanning tree.
pub fn eta(t: &RootedTree, g: &SignedMultigraph) -> usize {
    (0..g.vertex_count()).map(|v| t.depth(v)).sum()
}

/// Coedges whose least common ancestor is interior to the fundamental path,
/// ordered by (LCA depth ascending, endpoint indices, edge id). These are
/// exactly the coedges whose path fails to alternate.
pub fn offending_coedges(g: &SignedMultigraph, t: &RootedTree) -> Vec<usize> {
    let mut found: Vec<(usize, usize, usize, usize)> = Vec::new();
    for id in t.coedges(g) {
        let e = g.edge(id);
        let top = t.lca(e.u, e.v);
        if top != e.u && top != e.v {
            let (a, b) = (e.u.min(e.v), e.u.max(e.v));
            found.push((t.depth(top), a, b, id));
        }
    }
    found.sort_unstable();
    found.into_iter().map(|(_, _, _, id)| id).collect()
}

/// One edge swap of the constructive algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapStep {
    pub removed: usize,
    pub inserted: usize,
    pub eta_before: usize,
    pub eta_after: usize,
}

/// The record of a full run: the swaps taken and the final tree, whose
/// fundamental paths all alternate. `eta` strictly increases along `steps`.
#[derive(Debug, Clone)]
pub struct SwapTrace {
    pub steps: Vec<SwapStep>,
    pub final_tree: RootedTree,
}

/// Performs one swap for the offending coedge `f`: removes the child edge
/// of the LCA on the strictly shorter side of the fundamental path and
/// inserts `f`, re-rooting depths at the same root. Errors when `eta` fails
/// to increase, which would be an implementation bug.
pub fn swap_step(g: &SignedMultigraph, t: &RootedTree, f: usize) -> Result<RootedTree> {
    let e = g.edge(f);
    let top = t.lca(e.u, e.v);
    if top == e.u || top == e.v {
        return Err(Error::internal(format!("coedge {f} is not offending")));
    }
    // Subpath lengths from the LCA down to each endpoint; the total is odd
    // on bipartite inputs, so they differ.
    let len_u = t.depth(e.u) - t.depth(top);
    let len_v = t.depth(e.v) - t.depth(top);
    let shorter_end = if len_u < len_v { e.u } else { e.v };
    // The child edge of the LCA on the shorter side is the last parent edge
    // on the walk from that endpoint up to the LCA.
    let mut w = shorter_end;
    let mut child_edge = None;
    while w != top {
        let (p, pe) = t.parent(w).expect("below lca");
        child_edge = Some(pe);
        w = p;
    }
    let removed = child_edge.expect("shorter side is nonempty");

    let mut edge_ids: Vec<usize> =
        t.tree_edges().iter().copied().filter(|&id| id != removed).collect();
    edge_ids.push(f);
    let new_tree = RootedTree::from_edge_ids(g, t.root(), &edge_ids)?;
    let (before, after) = (eta(t, g), eta(&new_tree, g));
    if after <= before {
        return Err(Error::internal(format!(
            "edge swap did not increase eta ({before} -> {after})"
        )));
    }
    Ok(new_tree)
}

/// Runs the swap algorithm from the breadth-first tree of `root` until no
/// offending coedge remains. The offending list is recomputed after every
/// swap. Deterministic in (graph, root). The iteration guard `|V|^3` can
/// only trip on an implementation bug: `eta < |V|^2` and strictly increases.
pub fn construct_valid_pair(g: &SignedMultigraph, root: usize) -> Result<SwapTrace> {
    let mut tree = RootedTree::bfs(g, root)?;
    let mut steps = Vec::new();
    let guard = g.vertex_count().pow(3).max(1);
    for _ in 0..=guard {
        let offending = offending_coedges(g, &tree);
        let Some(&f) = offending.first() else {
            debug_assert!(is_valid_pair(g, &tree));
            return Ok(SwapTrace { steps, final_tree: tree });
        };
        let eta_before = eta(&tree, g);
        let removed = {
            let next = swap_step(g, &tree, f)?;
            let removed = tree
                .tree_edges()
                .iter()
                .copied()
                .find(|id| !next.contains_edge(*id))
                .expect("swap removes one edge");
            tree = next;
            removed
        };
        steps.push(SwapStep { removed, inserted: f, eta_before, eta_after: eta(&tree, g) });
    }
    Err(Error::internal("edge swap iteration guard exceeded"))
}

/// Tries every root in vertex order and returns the first finished trace.
/// The construction succeeds for every root of a connected bipartite graph,
/// so this is just the root-0 run; it exists as the no-arguments entry point.
pub fn construct_valid_pair_any_root(g: &SignedMultigraph) -> Result<SwapTrace> {
    let mut last = Err(Error::internal("graph has no vertices"));
    for root in 0..g.vertex_count() {
        last = construct_valid_pair(g, root);
        if last.is_ok() {
            return last;
        }
    }
    last
}

/// Enumerates every spanning tree of a connected graph exactly once, as
/// sorted edge-id lists in lexicographic order. Errors when `|E|` exceeds
/// `cap`.
pub fn enumerate_spanning_trees(g: &SignedMultigraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    if g.edge_count() > cap {
        return Err(Error::cap(format!(
            "edge count {} exceeds enumeration cap {cap}",
            g.edge_count()
        )));
    }
    if !g.is_connected() {
        return Err(Error::cap("graph is not connected".to_string()));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let need = n.saturating_sub(1);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    let mut dsu = Dsu::new(n);
    collect_trees(g, 0, need, m, &mut chosen, &mut dsu, &mut out);
    Ok(out)
}

fn collect_trees(
    g: &SignedMultigraph,
    start: usize,
    need: usize,
    m: usize,
    chosen: &mut Vec<usize>,
    dsu: &mut Dsu,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == need {
        out.push(chosen.clone());
        return;
    }
    let remaining = need - chosen.len();
    // Not enough edges left to finish this combination.
    if start + remaining > m {
        return;
    }
    // The untouched suffix must still be able to merge the current forest.
    let mut probe = dsu.clone();
    let mut extra = 0;
    for id in start..m {
        let e = g.edge(id);
        if probe.union(e.u, e.v) {
            extra += 1;
        }
    }
    if extra < remaining {
        return;
    }
    for id in start..=(m - remaining) {
        let e = g.edge(id);
        let mut next = dsu.clone();
        if next.union(e.u, e.v) {
            chosen.push(id);
            collect_trees(g, id + 1, need, m, chosen, &mut next, out);
            chosen.pop();
        }
    }
}

#[derive(Clone)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Number of spanning trees by the Kirchhoff cofactor: the determinant of
/// the multigraph Laplacian with one row and column deleted, in exact
/// integer arithmetic. Disconnected graphs give 0; a single vertex gives 1.
pub fn matrix_tree_count(g: &SignedMultigraph) -> u64 {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        lap[e.u][e.u] += 1;
        lap[e.v][e.v] += 1;
        lap[e.u][e.v] -= 1;
        lap[e.v][e.u] -= 1;
    }
    let minor: Vec<Vec<BigInt>> =
        (1..n).map(|i| (1..n).map(|j| lap[i][j].clone()).collect()).collect();
    determinant(minor).to_u64().expect("spanning tree count fits in u64")
}

/// Fraction-free Bareiss elimination; exact for integer matrices.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = val;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Splits `items` into `workers` round-robin chunks, maps each chunk on its
/// own thread, and reduces with `min` under the caller's total order. The
/// result is independent of the worker count as long as `key` is a total
/// order, which keeps exhaustive searches byte-deterministic.
pub fn parallel_min_by_key<T, K, F>(items: Vec<T>, workers: usize, key: F) -> Option<T>
where
    T: Send,
    K: Ord + Send,
    F: Fn(&T) -> K + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return items.into_iter().min_by_key(|t| key(t));
    }
    let mut chunks: Vec<Vec<T>> = (0..workers).map(|_| Vec::new()).collect();
    for (i, item) in items.into_iter().enumerate() {
        chunks[i % workers].push(item);
    }
    let locals: Vec<Option<T>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(|| chunk.into_iter().min_by_key(|t| key(t))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    locals.into_iter().flatten().min_by_key(|t| key(t))
}
