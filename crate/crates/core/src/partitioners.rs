//! Equitable partitions of planar graphs into degenerate parts.
//!
//! All three partitioners work the same way: compute an elimination
//! sequence, start from an equitable partition of what is left at the end of
//! it (the edgeless graph or the empty graph), then undo the removals one at
//! a time while keeping every part within its degeneracy bound. Whenever a
//! re-added edge pushes a vertex `v` over the bound inside its own part, `v`
//! is swapped with a vertex `w` of another part that has few neighbors in
//! `v`'s part. Swaps never change part sizes, so equitability is preserved
//! throughout.

use serde::{Deserialize, Serialize};

use crate::elimination::{edge_elimination_sequence, trifree_elimination_sequence, Step};
use crate::graph::{Graph, VertexSet};
use crate::verify::{check_partition, find_triangle, PartConstraint, PartitionSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
    pub trace: Vec<RepairEvent>,
}

impl Partition {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(VertexSet::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairEvent {
    /// Position in replay order (0 = first re-added edge or vertex).
    pub step: usize,
    pub kind: RepairKind,
    /// For a swap: `[v, w]`, where `v` left its part and `w` took its place.
    pub moved: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairKind {
    None,
    /// `v` swapped with a vertex taken from this part.
    SwapFromPart(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReplayOptions {
    /// Record a trace event for every replay step, not only for swaps.
    pub full_trace: bool,
    /// Re-verify equitability and every degeneracy bound against the current
    /// edge set after each replay step. Quadratic; for debugging.
    pub check_each_step: bool,
}

/// Two parts of sizes `⌈n/2⌉` and `⌊n/2⌋`, each inducing a 3-degenerate
/// graph. Requires a planar input; a non-planar one may be rejected with
/// [`Error::NoLowDegreeVertex`] or [`Error::RepairFailed`].
pub fn partition_2x3deg(g: &Graph) -> Result<Partition> {
    partition_2x3deg_with(g, ReplayOptions::default())
}

pub fn partition_2x3deg_with(g: &Graph, opts: ReplayOptions) -> Result<Partition> {
    replay_edges(g, 2, 3, opts)
}

/// Three parts whose sizes differ by at most one, each inducing a
/// 2-degenerate graph. Same preconditions and failure modes as
/// [`partition_2x3deg`].
pub fn partition_3x2deg(g: &Graph) -> Result<Partition> {
    partition_3x2deg_with(g, ReplayOptions::default())
}

pub fn partition_3x2deg_with(g: &Graph, opts: ReplayOptions) -> Result<Partition> {
    replay_edges(g, 3, 2, opts)
}

/// Two parts of sizes `⌈n/2⌉` and `⌊n/2⌋`, each inducing a 2-degenerate
/// graph, for a triangle-free planar input.
///
/// Fails with [`Error::NotTriangleFree`] when `g` has a triangle, and with
/// [`Error::StructureClaimViolated`] when the elimination gets stuck (only
/// possible for non-planar input).
pub fn partition_2x2deg_trifree(g: &Graph) -> Result<Partition> {
    partition_2x2deg_trifree_with(g, ReplayOptions::default())
}

pub fn partition_2x2deg_trifree_with(g: &Graph, opts: ReplayOptions) -> Result<Partition> {
    if let Some(triangle) = find_triangle(g) {
        return Err(Error::NotTriangleFree { triangle });
    }
    let seq = trifree_elimination_sequence(g)?;
    let n = g.n();
    let mut part_of = vec![UNPLACED; n];
    let mut sizes = [0usize; 2];
    let mut trace = Vec::new();
    for (step, s) in seq.steps.iter().rev().enumerate() {
        match *s {
            Step::LowVertex { v } => {
                let p = if sizes[0] <= sizes[1] { 0 } else { 1 };
                part_of[v] = p;
                sizes[p] += 1;
            }
            Step::Pair { u, v } => {
                // v has at most five placed neighbors, so one side holds at
                // most two of them.
                let mut counts = [0usize; 2];
                for &w in g.neighbors(v) {
                    if part_of[w] != UNPLACED {
                        counts[part_of[w]] += 1;
                    }
                }
                let Some(p) = (0..2).find(|&p| counts[p] <= 2) else {
                    return Err(Error::ReplayInvariant {
                        step,
                        detail: format!("vertex {v} has {counts:?} placed neighbors per part"),
                    });
                };
                part_of[v] = p;
                part_of[u] = 1 - p;
                sizes[0] += 1;
                sizes[1] += 1;
            }
            Step::Edge { .. } => unreachable!("vertex elimination yields no edge steps"),
        }
        if opts.full_trace {
            trace.push(RepairEvent {
                step,
                kind: RepairKind::None,
                moved: Vec::new(),
            });
        }
        if opts.check_each_step {
            let placed: Vec<usize> = (0..n).filter(|&v| part_of[v] != UNPLACED).collect();
            let (h, ids) = g.induced_subgraph(&placed);
            let local: Vec<usize> = ids.iter().map(|&v| part_of[v]).collect();
            check_step(&h, &local, 2, 2, step)?;
        }
    }
    Ok(Partition {
        parts: collect_parts(&part_of, 2),
        trace,
    })
}

const UNPLACED: usize = usize::MAX;

/// Contiguous blocks by vertex id; the first `n mod k` blocks get the extra
/// vertex.
fn block_assignment(n: usize, k: usize) -> Vec<usize> {
    let (base, extra) = (n / k, n % k);
    let mut part_of = Vec::with_capacity(n);
    for p in 0..k {
        let size = base + usize::from(p < extra);
        part_of.extend(std::iter::repeat_n(p, size));
    }
    part_of
}

fn collect_parts(part_of: &[usize], k: usize) -> Vec<VertexSet> {
    let mut parts = vec![VertexSet::new(); k];
    for (v, &p) in part_of.iter().enumerate() {
        parts[p].insert(v);
    }
    parts
}

fn replay_edges(g: &Graph, k: usize, bound: usize, opts: ReplayOptions) -> Result<Partition> {
    let seq = edge_elimination_sequence(g)?;
    let n = g.n();
    let mut part_of = block_assignment(n, k);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut trace = Vec::new();

    let inside = |adj: &[Vec<usize>], part_of: &[usize], x: usize, part: usize, skip: usize| {
        adj[x].iter().filter(|&&y| y != skip && part_of[y] == part).count()
    };

    for (step, s) in seq.steps.iter().rev().enumerate() {
        let Step::Edge { v, v1 } = *s else {
            unreachable!("edge elimination yields only edge steps");
        };
        adj[v].push(v1);
        adj[v1].push(v);

        let own = part_of[v];
        let event = if inside(&adj, &part_of, v, own, v) <= bound {
            RepairEvent {
                step,
                kind: RepairKind::None,
                moved: Vec::new(),
            }
        } else {
            // v now has more than `bound` neighbors at home, hence at most
            // `bound` in each other part. Any w elsewhere with at most
            // `bound` neighbors in V_own - v can trade places with it.
            let partner = (0..k).filter(|&j| j != own).find_map(|j| {
                (0..n)
                    .find(|&w| part_of[w] == j && inside(&adj, &part_of, w, own, v) <= bound)
                    .map(|w| (j, w))
            });
            let Some((j, w)) = partner else {
                return Err(Error::RepairFailed { step, vertex: v });
            };
            part_of[v] = j;
            part_of[w] = own;
            RepairEvent {
                step,
                kind: RepairKind::SwapFromPart(j),
                moved: vec![v, w],
            }
        };
        if opts.full_trace || event.kind != RepairKind::None {
            trace.push(event);
        }
        if opts.check_each_step {
            let current = Graph::from_edges(
                n,
                adj.iter()
                    .enumerate()
                    .flat_map(|(x, list)| list.iter().map(move |&y| (x, y))),
            )?;
            check_step(&current, &part_of, k, bound, step)?;
        }
    }
    Ok(Partition {
        parts: collect_parts(&part_of, k),
        trace,
    })
}

fn check_step(g: &Graph, part_of: &[usize], k: usize, bound: usize, step: usize) -> Result<()> {
    let parts = collect_parts(part_of, k);
    let spec = PartitionSpec::uniform(k, PartConstraint::Degenerate(bound), true);
    let report = check_partition(g, &parts, &spec);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::ReplayInvariant {
            step,
            detail: format!("partition check failed: {:?}", report.witness()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::degeneracy;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn icosahedron() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            let (a, a2) = (1 + i, 1 + (i + 1) % 5);
            let (b, b2) = (6 + i, 6 + (i + 1) % 5);
            edges.extend([(0, a), (a, a2), (a, b), (a2, b), (b, b2), (b, 11)]);
        }
        Graph::from_edges(12, edges).unwrap()
    }

    fn cube() -> Graph {
        Graph::from_edges(
            8,
            (0..8usize)
                .flat_map(|a| (0..3).map(move |b| (a, a ^ (1 << b))))
                .filter(|&(a, b)| a < b),
        )
        .unwrap()
    }

    fn assert_parts(g: &Graph, p: &Partition, k: usize, bound: usize) {
        let spec = PartitionSpec::uniform(k, PartConstraint::Degenerate(bound), true);
        let report = check_partition(g, &p.parts, &spec);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn k4_two_parts() {
        let p = partition_2x3deg(&complete(4)).unwrap();
        assert_eq!(p.parts, vec![[0, 1].into(), [2, 3].into()]);
        assert!(p.trace.is_empty());
    }

    #[test]
    fn edgeless_is_the_base_case() {
        let p = partition_2x3deg_with(
            &Graph::empty(5),
            ReplayOptions {
                full_trace: true,
                check_each_step: true,
            },
        )
        .unwrap();
        assert_eq!(p.sizes(), vec![3, 2]);
        assert!(p.trace.is_empty());
    }

    #[test]
    fn icosahedron_all_partitioners() {
        let g = icosahedron();
        let opts = ReplayOptions {
            full_trace: true,
            check_each_step: true,
        };
        let p = partition_2x3deg_with(&g, opts).unwrap();
        assert_eq!(p.sizes(), vec![6, 6]);
        assert_eq!(p.trace.len(), 30);
        assert_parts(&g, &p, 2, 3);

        let p = partition_3x2deg_with(&g, opts).unwrap();
        assert_eq!(p.sizes(), vec![4, 4, 4]);
        assert_parts(&g, &p, 3, 2);
    }

    #[test]
    fn three_parts_small() {
        let p = partition_3x2deg(&complete(4)).unwrap();
        assert_eq!(p.sizes(), vec![2, 1, 1]);
        assert_parts(&complete(4), &p, 3, 2);

        let c6 = cycle(6);
        let p = partition_3x2deg(&c6).unwrap();
        assert_eq!(p.sizes(), vec![2, 2, 2]);
        assert_parts(&c6, &p, 3, 2);
    }

    #[test]
    fn swaps_preserve_sizes() {
        let opts = ReplayOptions {
            full_trace: false,
            check_each_step: true,
        };
        let g = crate::parse_graph("Iv^iuGwIG", crate::GraphFormat::Graph6).unwrap();
        let p = partition_3x2deg_with(&g, opts).unwrap();
        assert_eq!(
            p.trace,
            vec![RepairEvent {
                step: 11,
                kind: RepairKind::SwapFromPart(1),
                moved: vec![0, 5],
            }]
        );
        assert_parts(&g, &p, 3, 2);

        let g = crate::parse_graph("H}]TSuT", crate::GraphFormat::Graph6).unwrap();
        let p = partition_2x3deg_with(&g, opts).unwrap();
        assert_eq!(p.trace.len(), 1);
        assert_eq!(p.trace[0].moved, vec![1, 5]);
        assert_parts(&g, &p, 2, 3);
    }

    #[test]
    fn trifree_examples() {
        let c6 = cycle(6);
        let p = partition_2x2deg_trifree(&c6).unwrap();
        assert_eq!(p.sizes(), vec![3, 3]);
        for part in &p.parts {
            let (h, _) = c6.induced_subgraph(&part.to_vec());
            assert!(degeneracy(&h) <= 1);
        }

        let star = Graph::from_edges(7, (1..7).map(|i| (0, i))).unwrap();
        let p = partition_2x2deg_trifree(&star).unwrap();
        let mut sizes = p.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 4]);

        let q3 = cube();
        let p = partition_2x2deg_trifree_with(
            &q3,
            ReplayOptions {
                full_trace: true,
                check_each_step: true,
            },
        )
        .unwrap();
        assert_eq!(p.sizes(), vec![4, 4]);
        assert_parts(&q3, &p, 2, 2);
    }

    #[test]
    fn trifree_rejects_triangles() {
        assert_eq!(
            partition_2x2deg_trifree(&complete(4)),
            Err(Error::NotTriangleFree { triangle: [0, 1, 2] })
        );
    }

    #[test]
    fn k7_is_rejected() {
        assert!(matches!(
            partition_2x3deg(&complete(7)),
            Err(Error::NoLowDegreeVertex { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let p = Partition {
            parts: vec![[0, 2].into(), [1].into()],
            trace: vec![RepairEvent {
                step: 4,
                kind: RepairKind::SwapFromPart(1),
                moved: vec![0, 1],
            }],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"parts":[[0,2],[1]],"trace":[{"step":4,"kind":{"swap_from_part":1},"moved":[0,1]}]}"#
        );
    }
}
