//! Exhaustive enumeration of small graphs.
//!
//! [`labeled_graphs`] walks every edge subset on `n` labeled vertices.
//! [`planar_graphs_up_to_iso`] grows planar graphs one vertex at a time and
//! keeps one representative per isomorphism class, identified by a
//! canonical adjacency code from individualization and refinement.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::verify::is_planar;

/// Largest `n` whose labeled graphs fit a `u64` edge mask walk in reasonable
/// time (`2^28` subsets at `n = 8`).
pub const MAX_LABELED_N: usize = 8;
/// Canonical codes are `u64` upper-triangle bitmaps.
pub const MAX_CANONICAL_N: usize = 11;

/// Every graph on vertex set `0..n`, in increasing order of edge mask over
/// the lexicographic pair order `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(
        n <= MAX_LABELED_N,
        "labeled enumeration limited to n <= {MAX_LABELED_N}"
    );
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are valid edges")
    })
}

/// One representative of every isomorphism class of planar graphs on
/// `0..=max_n` vertices, grouped by order: `result[n]` holds those on `n`
/// vertices, in canonical labeling.
///
/// Every planar graph on `n` vertices is a planar graph on `n - 1` vertices
/// plus one vertex, so extending each class representative by all possible
/// neighborhoods reaches every class.
pub fn planar_graphs_up_to_iso(max_n: usize) -> Vec<Vec<Graph>> {
    assert!(
        max_n <= MAX_CANONICAL_N,
        "canonical codes limited to n <= {MAX_CANONICAL_N}"
    );
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 1] {
            let base: Vec<(usize, usize)> = g.edges().collect();
            for mask in 0u32..1 << (n - 1) {
                let new = (0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1));
                let h = Graph::from_edges(n, base.iter().copied().chain(new)).expect("valid edges");
                if !is_planar(&h) {
                    continue;
                }
                let (code, order) = canonical_form(&h);
                if seen.insert(code) {
                    level.push(relabel(&h, &order));
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// Graph with vertex `order[i]` renamed to `i`.
pub fn relabel(g: &Graph, order: &[usize]) -> Graph {
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (position[u], position[v]))).expect("valid edges")
}

/// Isomorphism-invariant code and a labeling that realizes it: two graphs
/// on the same number of vertices are isomorphic iff their codes agree.
pub fn canonical_form(g: &Graph) -> (u64, Vec<usize>) {
    assert!(
        g.n() <= MAX_CANONICAL_N,
        "canonical codes limited to n <= {MAX_CANONICAL_N}"
    );
    let colors = refine(g, vec![0; g.n()]);
    let mut best = None;
    search(g, colors, &mut best);
    best.unwrap_or((0, Vec::new()))
}

/// Refines a vertex coloring until each vertex's color determines how many
/// neighbors it has of every color. New colors are ranks of sorted
/// signatures, so the result does not depend on vertex names.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = distinct(&colors);
    loop {
        let signature: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut sorted = signature.clone();
        sorted.sort();
        sorted.dedup();
        colors = signature
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        let now = sorted.len();
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn distinct(colors: &[usize]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = g.n();
    // First color (in color order) shared by several vertices.
    let mut counts = vec![0; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colors[v]] = v;
        }
        let code = adjacency_code(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for v in (0..n).filter(|&v| colors[v] == target) {
        // Swapping two twins is an automorphism, so one of them suffices.
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        // Put v first within its cell, ahead of the rest of the cell.
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(c == target && w != v))
            .collect();
        search(g, refine(g, split), best);
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |x: usize, other: usize| g.neighbors(x).iter().copied().filter(move |&w| w != other);
    strip(u, v).eq(strip(v, u))
}

/// Upper-triangle bits of the adjacency matrix under `order`, row-major.
fn adjacency_code(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(g.has_edge(order[i], order[j]));
        }
    }
    code
}
