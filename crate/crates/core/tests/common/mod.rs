//! Shared helpers for the integration suites: seeded random graph
//! generators and brute-force oracles kept independent of the library's
//! search code paths.
//!
//! Each test binary compiles its own copy, so not every suite touches
//! every helper.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plumb_core::{Sign, SignedMultigraph};

pub type TestRng = ChaCha8Rng;

/// Fixed default seed; override with PLUMB_TEST_SEED for reproduction runs.
pub fn test_seed() -> u64 {
    std::env::var("PLUMB_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5EED)
}

pub fn rng() -> TestRng {
    TestRng::seed_from_u64(test_seed())
}

fn random_sign(rng: &mut TestRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Connected bipartite multigraph: a random class-respecting spanning tree
/// plus random extra edges across the classes, random signs throughout.
pub fn random_bipartite_connected(
    rng: &mut TestRng,
    max_vertices: usize,
    max_edges: usize,
) -> SignedMultigraph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut class = vec![0u8; n];
    class[1] = 1;
    for c in class.iter_mut().skip(2) {
        *c = rng.gen_range(0..2);
    }
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    for v in 1..n {
        let candidates: Vec<usize> = (0..v).filter(|&u| class[u] != class[v]).collect();
        let u = if candidates.is_empty() {
            class[v] = 1 - class[v];
            let flipped: Vec<usize> = (0..v).filter(|&u| class[u] != class[v]).collect();
            flipped[rng.gen_range(0..flipped.len())]
        } else {
            candidates[rng.gen_range(0..candidates.len())]
        };
        edges.push((u, v, random_sign(rng)));
    }
    let target = rng.gen_range(n - 1..=max_edges.max(n - 1));
    let cross: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| class[u] != class[v])
        .collect();
    while edges.len() < target {
        let (u, v) = cross[rng.gen_range(0..cross.len())];
        edges.push((u, v, random_sign(rng)));
    }
    let names = (0..n).map(|i| format!("w{i}")).collect();
    SignedMultigraph::new(names, edges, None).expect("generated graph is well-formed")
}

/// Connected multigraph without the bipartite constraint (loop-free).
pub fn random_connected(
    rng: &mut TestRng,
    max_vertices: usize,
    max_edges: usize,
) -> SignedMultigraph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, random_sign(rng)));
    }
    let target = rng.gen_range(n - 1..=max_edges.max(n - 1));
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v), random_sign(rng)));
        }
    }
    let names = (0..n).map(|i| format!("w{i}")).collect();
    SignedMultigraph::new(names, edges, None).expect("generated graph is well-formed")
}

/// Brute-force spanning tree enumeration over all edge subsets of size
/// V-1, with an adjacency BFS spanning check. Independent of the library's
/// backtracking enumerator.
pub fn oracle_spanning_trees(g: &SignedMultigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n == 0 {
        return Vec::new();
    }
    let need = n - 1;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if subset_spans(g, &subset) {
            out.push(subset);
        }
    }
    out
}

fn subset_spans(g: &SignedMultigraph, subset: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(w) = stack.pop() {
        for &id in subset {
            let e = g.edge(id);
            if e.touches(w) {
                let x = e.other(w);
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    stack.push(x);
                }
            }
        }
    }
    count == n
}

/// Parent maps (vertex, edge) of a subset-tree rooted at `root`, by direct
/// scan; panics if the subset does not span.
fn subset_parents(g: &SignedMultigraph, subset: &[usize], root: usize) -> Vec<Option<(usize, usize)>> {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut frontier = vec![root];
    while let Some(w) = frontier.pop() {
        for &id in subset {
            let e = g.edge(id);
            if e.touches(w) {
                let x = e.other(w);
                if depth[x] == usize::MAX {
                    depth[x] = depth[w] + 1;
                    parent[x] = Some((w, id));
                    frontier.push(x);
                }
            }
        }
    }
    assert!(depth.iter().all(|&d| d != usize::MAX), "subset must span");
    parent
}

fn subset_depth(parent: &[Option<(usize, usize)>], mut v: usize) -> usize {
    let mut d = 0;
    while let Some((p, _)) = parent[v] {
        v = p;
        d += 1;
    }
    d
}

/// Tree path between the endpoints of coedge `id`, as edge ids from the
/// first endpoint, walked through the parent maps.
fn subset_path(
    g: &SignedMultigraph,
    parent: &[Option<(usize, usize)>],
    id: usize,
) -> Vec<usize> {
    let e = g.edge(id);
    let (mut a, mut b) = (e.u, e.v);
    let mut up_a = Vec::new();
    let mut up_b = Vec::new();
    let (mut da, mut db) = (subset_depth(parent, a), subset_depth(parent, b));
    while da > db {
        let (p, pe) = parent[a].unwrap();
        up_a.push(pe);
        a = p;
        da -= 1;
    }
    while db > da {
        let (p, pe) = parent[b].unwrap();
        up_b.push(pe);
        b = p;
        db -= 1;
    }
    while a != b {
        let (pa, ea) = parent[a].unwrap();
        let (pb, eb) = parent[b].unwrap();
        up_a.push(ea);
        up_b.push(eb);
        a = pa;
        b = pb;
    }
    up_b.reverse();
    up_a.extend(up_b);
    up_a
}

/// Definitional flat plumbing bound: minimize (E-V+1) + 2|S| over all
/// subset-trees and all companion sets S, deciding each path by trying
/// every sign assignment outright.
pub fn oracle_fp(g: &SignedMultigraph) -> usize {
    let base = g.edge_count() + 1 - g.vertex_count();
    let mut best = usize::MAX;
    for tree in oracle_spanning_trees(g) {
        let parent = subset_parents(g, &tree, 0);
        let coedge_paths: Vec<(usize, Vec<usize>)> = (0..g.edge_count())
            .filter(|id| !tree.contains(id))
            .map(|id| (id, subset_path(g, &parent, id)))
            .collect();
        let t = tree.len();
        for smask in 0u32..(1u32 << t) {
            let size = smask.count_ones() as usize;
            if base + 2 * size >= best {
                continue;
            }
            let companions: Vec<usize> =
                (0..t).filter(|&i| smask >> i & 1 == 1).map(|i| tree[i]).collect();
            let ok = coedge_paths.iter().all(|(_, path)| {
                path_assignable(g, path, &companions)
            });
            if ok {
                best = best.min(base + 2 * size);
            }
        }
    }
    best
}

/// Any alternating sign assignment: try all 2^len candidate vectors.
fn path_assignable(g: &SignedMultigraph, path: &[usize], companions: &[usize]) -> bool {
    let len = path.len();
    'next: for mask in 0u32..(1u32 << len) {
        let signs: Vec<Sign> = (0..len)
            .map(|i| if mask >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
            .collect();
        for w in signs.windows(2) {
            if w[0] == w[1] {
                continue 'next;
            }
        }
        for (i, &f) in path.iter().enumerate() {
            if !companions.contains(&f) && g.edge(f).sign != signs[i] {
                continue 'next;
            }
        }
        return true;
    }
    false
}

/// Definitional flat plumbing basket bound under the coupled flip rule,
/// recomputed from scratch: depth parity colorings, alternation checks and
/// the B/C sets all evaluated by direct loops over both flips.
pub fn oracle_fpbk(g: &SignedMultigraph) -> usize {
    let mut best = usize::MAX;
    for tree in oracle_spanning_trees(g) {
        for root in 0..g.vertex_count() {
            let parent = subset_parents(g, &tree, root);
            let edge_depth = |id: usize| {
                let e = g.edge(id);
                subset_depth(&parent, e.u).max(subset_depth(&parent, e.v))
            };
            let kappa = |id: usize, flipped: bool| {
                let base = if edge_depth(id) % 2 == 0 { Sign::Plus } else { Sign::Minus };
                if flipped {
                    base.flip()
                } else {
                    base
                }
            };
            let coedges: Vec<usize> =
                (0..g.edge_count()).filter(|id| !tree.contains(id)).collect();
            let valid = coedges.iter().all(|&id| {
                let path = subset_path(g, &parent, id);
                path.windows(2).all(|w| kappa(w[0], false) != kappa(w[1], false))
            });
            if !valid {
                continue;
            }
            let count_b = |flipped: bool| {
                tree.iter().filter(|&&id| g.edge(id).sign != kappa(id, flipped)).count()
            };
            let count_c = |flipped: bool| {
                coedges
                    .iter()
                    .filter(|&&id| {
                        let path = subset_path(g, &parent, id);
                        let mut prod = Sign::Plus;
                        for &f in &path {
                            prod = prod.times(kappa(f, flipped));
                        }
                        g.edge(id).sign != prod
                    })
                    .count()
            };
            let (b0, b1) = (count_b(false), count_b(true));
            let flipped = if b1 < b0 {
                true
            } else if b0 < b1 {
                false
            } else {
                count_c(true) > count_c(false)
            };
            let gamma = if flipped { b1 } else { b0 };
            let delta = count_c(flipped);
            let bound = (3 * (g.edge_count() as i64 - g.vertex_count() as i64)
                + 2 * (gamma as i64 - delta as i64)
                + 3) as usize;
            best = best.min(bound);
        }
    }
    best
}
