//! Signed bipartite multigraphs and rooted spanning trees.
//!
//! A Seifert surface collapses to a signed multigraph: one vertex per disc,
//! one signed edge per half-twisted band. Local orientations of the discs
//! split the vertices into two classes, so the graph is always bipartite.
//! Everything downstream (depth colorings, fundamental paths, the plumbing
//! bounds) lives on top of this module.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge sign, written `+` / `-` in graph files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Sign of `(-1)^k`.
    pub fn from_parity(k: usize) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// A signed edge between two vertex indices. Loops are rejected at
/// construction, multiple parallel edges are expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    /// The endpoint other than `w`.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

/// A finite signed multigraph with named vertices and stable edge ids.
///
/// Vertex ids are indices into the declaration order; edge ids are indices
/// into the edge list in input order, starting at 0. Both stay fixed for
/// the lifetime of the value: spanning trees, colorings and bound witnesses
/// all speak in terms of these ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMultigraph {
    names: Vec<String>,
    edges: Vec<Edge>,
    /// Number of boundary components of the underlying link, when known.
    /// Graph files may carry it; braid-derived graphs compute it.
    pub components_hint: Option<usize>,
}

impl SignedMultigraph {
    /// Builds a graph from vertex names and signed edges. Rejects loops and
    /// duplicate names; does not require bipartiteness (use
    /// [`SignedMultigraph::bipartition`] to check it).
    pub fn new(
        names: Vec<String>,
        edges: Vec<(usize, usize, Sign)>,
        components_hint: Option<usize>,
    ) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::parse(format!("duplicate vertex declaration `{name}`")));
            }
        }
        let mut es = Vec::with_capacity(edges.len());
        for (u, v, sign) in edges {
            if u >= names.len() || v >= names.len() {
                return Err(Error::parse("edge endpoint out of range"));
            }
            if u == v {
                return Err(Error::parse(format!("loop edge at vertex `{}`", names[u])));
            }
            es.push(Edge { u, v, sign });
        }
        Ok(SignedMultigraph { names, edges: es, components_hint })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adjacency as `(edge id, neighbour)` pairs in increasing edge-id order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push((id, e.v));
            adj[e.v].push((id, e.u));
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(w) = queue.pop_front() {
            for &(_, x) in &adj[w] {
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    queue.push_back(x);
                }
            }
        }
        count == self.names.len()
    }

    /// Proper 2-coloring of the vertices, or the vertex names of an odd
    /// cycle when there is none. Classes are normalized so the first vertex
    /// of each connected component sits in class 0.
    pub fn bipartition(&self) -> std::result::Result<Vec<u8>, Vec<String>> {
        let adj = self.adjacency();
        let n = self.names.len();
        let mut class = vec![u8::MAX; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        for start in 0..n {
            if class[start] != u8::MAX {
                continue;
            }
            class[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                for &(_, x) in &adj[w] {
                    if class[x] == u8::MAX {
                        class[x] = 1 - class[w];
                        parent[x] = Some(w);
                        queue.push_back(x);
                    } else if class[x] == class[w] {
                        return Err(self.odd_cycle(&parent, w, x));
                    }
                }
            }
        }
        Ok(class)
    }

    /// Reconstructs an odd cycle witness from the BFS forest, as vertex names.
    fn odd_cycle(&self, parent: &[Option<usize>], mut a: usize, mut b: usize) -> Vec<String> {
        let mut path_a = vec![a];
        while let Some(p) = parent[a] {
            a = p;
            path_a.push(a);
        }
        let mut path_b = vec![b];
        while let Some(p) = parent[b] {
            b = p;
            path_b.push(b);
        }
        // Drop the shared tail beyond the meeting point.
        while path_a.len() > 1
            && path_b.len() > 1
            && path_a[path_a.len() - 1] == path_b[path_b.len() - 1]
            && path_a[path_a.len() - 2] == path_b[path_b.len() - 2]
        {
            path_a.pop();
            path_b.pop();
        }
        path_b.pop();
        path_a
            .iter()
            .chain(path_b.iter().rev())
            .map(|&v| self.names[v].clone())
            .collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }
}

/// Parses the line-oriented graph file format:
///
/// ```text
/// # comment
/// vertex <name>
/// edge <u> <v> <+|->
/// components <l>
/// ```
///
/// Vertex names are whitespace-free tokens. Edge ids are assigned in file
/// order starting at 0. The graph must be loop-free and bipartite.
pub fn parse_graph(text: &str) -> Result<SignedMultigraph> {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    let mut components = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "vertex" => {
                let [name] = rest[..] else {
                    return Err(Error::parse(format!(
                        "line {}: expected `vertex <name>`",
                        lineno + 1
                    )));
                };
                if names.iter().any(|n| n == name) {
                    return Err(Error::parse(format!(
                        "line {}: duplicate vertex declaration `{name}`",
                        lineno + 1
                    )));
                }
                names.push(name.to_string());
            }
            "edge" => {
                let [u, v, s] = rest[..] else {
                    return Err(Error::parse(format!(
                        "line {}: expected `edge <u> <v> <+|->`",
                        lineno + 1
                    )));
                };
                let lookup = |name: &str| {
                    names.iter().position(|n| n == name).ok_or_else(|| {
                        Error::parse(format!("line {}: unknown vertex `{name}`", lineno + 1))
                    })
                };
                let sign = match s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => {
                        return Err(Error::parse(format!(
                            "line {}: bad sign `{other}` (expected + or -)",
                            lineno + 1
                        )))
                    }
                };
                edges.push((lookup(u)?, lookup(v)?, sign));
            }
            "components" => {
                let [l] = rest[..] else {
                    return Err(Error::parse(format!(
                        "line {}: expected `components <l>`",
                        lineno + 1
                    )));
                };
                let l: usize = l.parse().map_err(|_| {
                    Error::parse(format!("line {}: bad component count `{l}`", lineno + 1))
                })?;
                if l == 0 {
                    return Err(Error::parse(format!(
                        "line {}: component count must be positive",
                        lineno + 1
                    )));
                }
                components = Some(l);
            }
            other => {
                return Err(Error::parse(format!(
                    "line {}: unknown keyword `{other}`",
                    lineno + 1
                )));
            }
        }
    }
    let graph = SignedMultigraph::new(names, edges, components)?;
    if let Err(cycle) = graph.bipartition() {
        return Err(Error::parse(format!(
            "graph is not bipartite: odd cycle {}",
            cycle.join("-")
        )));
    }
    Ok(graph)
}

/// Renders a graph back into the file format. `parse_graph` of the output
/// reproduces the graph, ids included.
pub fn render_graph(g: &SignedMultigraph) -> String {
    let mut out = String::new();
    for name in g.vertex_names() {
        out.push_str(&format!("vertex {name}\n"));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            g.vertex_name(e.u),
            g.vertex_name(e.v),
            e.sign
        ));
    }
    if let Some(l) = g.components_hint {
        out.push_str(&format!("components {l}\n"));
    }
    out
}

/// Repeatedly removes vertices of degree 1 together with their edge; on the
/// diagram side each removal is a single untwisting move that keeps the
/// boundary link. Returns the pruned graph (vertices and edge ids reindexed
/// in surviving input order) and the number of removed vertices.
///
/// Removals are sequential: deleting one endpoint of an isolated edge
/// leaves the other at degree 0, which stays.
#[allow(clippy::needless_range_loop)]
pub fn prune_pendants(g: &SignedMultigraph) -> (SignedMultigraph, usize) {
    let mut alive_v = vec![true; g.vertex_count()];
    let mut alive_e = vec![true; g.edge_count()];
    loop {
        let mut removed_any = false;
        for v in 0..g.vertex_count() {
            if !alive_v[v] {
                continue;
            }
            let mut incident = (0..g.edge_count())
                .filter(|&id| alive_e[id] && g.edge(id).touches(v));
            if let (Some(only), None) = (incident.next(), incident.next()) {
                alive_v[v] = false;
                alive_e[only] = false;
                removed_any = true;
            }
        }
        if !removed_any {
            break;
        }
    }
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    let mut names = Vec::new();
    for v in 0..g.vertex_count() {
        if alive_v[v] {
            new_index[v] = names.len();
            names.push(g.vertex_name(v).to_string());
        }
    }
    let edges: Vec<(usize, usize, Sign)> = (0..g.edge_count())
        .filter(|&id| alive_e[id])
        .map(|id| {
            let e = g.edge(id);
            (new_index[e.u], new_index[e.v], e.sign)
        })
        .collect();
    let removed = alive_v.iter().filter(|a| !**a).count();
    let pruned = SignedMultigraph::new(names, edges, g.components_hint)
        .expect("pruning preserves well-formedness");
    (pruned, removed)
}

/// A spanning tree of a graph with a chosen root, carrying per-vertex depth
/// and parent data. Immutable once built; edge swaps build a fresh tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    /// Tree edge ids, sorted ascending.
    tree_edges: Vec<usize>,
    /// `parent[v] = (parent vertex, connecting edge id)`, `None` at the root.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Assembles a rooted tree from a set of edge ids. The set must have
    /// exactly `|V|-1` edges and reach every vertex.
    pub fn from_edge_ids(g: &SignedMultigraph, root: usize, edge_ids: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        if root >= n {
            return Err(Error::internal("tree root out of range"));
        }
        if n > 0 && edge_ids.len() != n - 1 {
            return Err(Error::internal(format!(
                "spanning tree needs {} edges, got {}",
                n.saturating_sub(1),
                edge_ids.len()
            )));
        }
        let mut tree_edges = edge_ids.to_vec();
        tree_edges.sort_unstable();
        tree_edges.dedup();
        if n > 0 && tree_edges.len() != n - 1 {
            return Err(Error::internal("duplicate edge ids in spanning tree"));
        }

        let mut adj = vec![Vec::new(); n];
        for &id in &tree_edges {
            let e = g.edge(id);
            adj[e.u].push((id, e.v));
            adj[e.v].push((id, e.u));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            for &(id, x) in &adj[w] {
                if depth[x] == usize::MAX {
                    depth[x] = depth[w] + 1;
                    parent[x] = Some((w, id));
                    queue.push_back(x);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::internal("edge set does not span the graph"));
        }
        Ok(RootedTree { root, tree_edges, parent, depth })
    }

    /// Breadth-first spanning tree from `root`, visiting edges in id order.
    pub fn bfs(g: &SignedMultigraph, root: usize) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::internal("graph is not connected"));
        }
        let adj = g.adjacency();
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree_edges = Vec::new();
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            for &(id, x) in &adj[w] {
                if depth[x] == usize::MAX {
                    depth[x] = depth[w] + 1;
                    parent[x] = Some((w, id));
                    tree_edges.push(id);
                    queue.push_back(x);
                }
            }
        }
        tree_edges.sort_unstable();
        Ok(RootedTree { root, tree_edges, parent, depth })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn contains_edge(&self, id: usize) -> bool {
        self.tree_edges.binary_search(&id).is_ok()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    /// Edge depth: the larger of the endpoint depths, always >= 1.
    pub fn edge_depth(&self, g: &SignedMultigraph, id: usize) -> usize {
        let e = g.edge(id);
        self.depth[e.u].max(self.depth[e.v])
    }

    /// Coedges: edges of the graph outside the tree, ascending.
    pub fn coedges(&self, g: &SignedMultigraph) -> Vec<usize> {
        (0..g.edge_count()).filter(|&id| !self.contains_edge(id)).collect()
    }

    /// Least common ancestor of `u` and `v` on root paths.
    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("non-root has a parent").0;
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("non-root has a parent").0;
        }
        while u != v {
            u = self.parent[u].expect("walk meets at lca").0;
            v = self.parent[v].expect("walk meets at lca").0;
        }
        u
    }

    /// The unique tree path joining the endpoints of the coedge `id`,
    /// as edge ids ordered from the coedge's first endpoint. Errors when
    /// `id` is a tree edge. Bipartite inputs always give odd length.
    pub fn fundamental_path(&self, g: &SignedMultigraph, id: usize) -> Result<Vec<usize>> {
        if self.contains_edge(id) {
            return Err(Error::internal(format!("edge {id} is a tree edge, not a coedge")));
        }
        let e = g.edge(id);
        let top = self.lca(e.u, e.v);
        let mut up = Vec::new();
        let mut w = e.u;
        while w != top {
            let (p, pe) = self.parent[w].expect("below lca");
            up.push(pe);
            w = p;
        }
        let mut down = Vec::new();
        let mut w = e.v;
        while w != top {
            let (p, pe) = self.parent[w].expect("below lca");
            down.push(pe);
            w = p;
        }
        down.reverse();
        up.extend(down);
        Ok(up)
    }
}

/// A 2-coloring of the tree edges. Unflipped, `kappa(e)` is the sign of
/// `(-1)^{d(e)}`; flipped is its pointwise negation. Both flips are carried
/// explicitly because nothing canonically prefers one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    signs: Vec<(usize, Sign)>,
    pub flipped: bool,
}

impl EdgeColoring {
    pub fn sign(&self, edge_id: usize) -> Sign {
        self.signs
            .binary_search_by_key(&edge_id, |&(id, _)| id)
            .map(|i| self.signs[i].1)
            .expect("edge is colored")
    }

    /// The same coloring with every sign negated.
    pub fn flip(&self) -> EdgeColoring {
        EdgeColoring {
            signs: self.signs.iter().map(|&(id, s)| (id, s.flip())).collect(),
            flipped: !self.flipped,
        }
    }

    pub fn entries(&self) -> &[(usize, Sign)] {
        &self.signs
    }
}

/// The depth coloring of a rooted tree, optionally globally flipped.
pub fn depth_coloring(g: &SignedMultigraph, t: &RootedTree, flipped: bool) -> EdgeColoring {
    let signs = t
        .tree_edges()
        .iter()
        .map(|&id| {
            let s = Sign::from_parity(t.edge_depth(g, id));
            (id, if flipped { s.flip() } else { s })
        })
        .collect();
    EdgeColoring { signs, flipped }
}

/// True when consecutive path edges always carry different colors.
/// Single-edge paths are alternating.
pub fn is_alternating(path: &[usize], kappa: &EdgeColoring) -> bool {
    path.windows(2).all(|w| kappa.sign(w[0]) != kappa.sign(w[1]))
}

/// Product of the coloring over the path's edges.
pub fn path_sign(path: &[usize], kappa: &EdgeColoring) -> Sign {
    path.iter().fold(Sign::Plus, |acc, &id| acc.times(kappa.sign(id)))
}

/// True when every fundamental path of `t` alternates under the unflipped
/// depth coloring. Invariant under the global flip, since alternation only
/// compares adjacent signs.
pub fn is_valid_pair(g: &SignedMultigraph, t: &RootedTree) -> bool {
    let kappa = depth_coloring(g, t, false);
    t.coedges(g).iter().all(|&id| {
        let path = t.fundamental_path(g, id).expect("coedge");
        is_alternating(&path, &kappa)
    })
}

/// Diagram statistics: `s` Seifert circles (vertices), `c` bands (edges),
/// `l` boundary components, and the genus of this particular diagram from
/// the Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertStats {
    pub s: usize,
    pub c: usize,
    pub l: usize,
    pub g_c: usize,
}

/// Computes the stats for a graph and a component count `l`.
/// `c - s + 2 - l` must be even and nonnegative; a violation signals an `l`
/// inconsistent with this graph.
pub fn seifert_stats(g: &SignedMultigraph, l: usize) -> Result<SeifertStats> {
    let s = g.vertex_count();
    let c = g.edge_count();
    let chi = c as i64 - s as i64 + 2 - l as i64;
    if chi < 0 || chi % 2 != 0 {
        return Err(Error::parse(format!(
            "component count {l} is inconsistent with {s} vertices and {c} edges"
        )));
    }
    Ok(SeifertStats { s, c, l, g_c: (chi / 2) as usize })
}
