//! Removal orders that the inductive partitioners replay backwards.
//!
//! [`edge_elimination_sequence`] deletes, one at a time, an edge at a vertex
//! of degree at most five; planar graphs always have one. For triangle-free
//! planar graphs, [`trifree_elimination_sequence`] deletes either a vertex of
//! degree at most two or both ends of an edge joining a degree-3 vertex to a
//! vertex of degree at most six; one of the two always exists.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::verify::DegreeBuckets;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// Edge `v v1` removed while `v` had degree between 1 and 5.
    Edge { v: usize, v1: usize },
    /// Vertex `v` removed while it had degree at most 2.
    LowVertex { v: usize },
    /// Both ends of edge `u v` removed while `deg(u) = 3` and `deg(v) <= 6`.
    Pair { u: usize, v: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationSequence {
    pub steps: Vec<Step>,
}

impl EliminationSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One JSON object per line, e.g. `{"kind":"edge","v":0,"v1":1}`.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("steps serialize") + "\n")
            .collect()
    }
}

/// Mutable copy of a graph with degree buckets, private to one computation.
struct Peeler {
    adj: Vec<BTreeSet<usize>>,
    alive: usize,
    buckets: DegreeBuckets,
}

impl Peeler {
    fn new(g: &Graph) -> Self {
        let degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        Peeler {
            adj: g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: g.n(),
            buckets: DegreeBuckets::new(&degree),
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let d = self.degree(a);
            self.adj[a].remove(&b);
            self.buckets.move_vertex(a, d, d - 1);
        }
    }

    fn remove_vertex(&mut self, v: usize) {
        let neighbors: Vec<usize> = self.adj[v].iter().copied().collect();
        for w in neighbors {
            self.remove_edge(v, w);
        }
        self.buckets.remove(v, 0);
        self.alive -= 1;
    }
}

/// Edge-by-edge removal order for a planar graph.
///
/// Each step takes the lowest-id vertex `v` of minimum positive degree and
/// its lowest-id neighbor `v1`. The sequence has exactly `m` steps. Fails with
/// [`Error::NoLowDegreeVertex`] if at some point every non-isolated vertex has
/// degree at least 6, which cannot happen for planar input.
pub fn edge_elimination_sequence(g: &Graph) -> Result<EliminationSequence> {
    let mut peeler = Peeler::new(g);
    let mut steps = Vec::with_capacity(g.m());
    for step in 0..g.m() {
        let (deg, v) = peeler
            .buckets
            .lowest_from(1)
            .expect("an edge remains, so some vertex has positive degree");
        if deg > 5 {
            return Err(Error::NoLowDegreeVertex { step, min_degree: deg });
        }
        let v1 = *peeler.adj[v].first().expect("positive degree");
        peeler.remove_edge(v, v1);
        steps.push(Step::Edge { v, v1 });
    }
    Ok(EliminationSequence { steps })
}

/// Vertex removal order for a triangle-free planar graph.
///
/// A vertex of degree at most 2 is always preferred (lowest id first);
/// otherwise the lexicographically least `(u, v)` with `deg(u) = 3`, `uv` an
/// edge and `deg(v) <= 6` is removed. Ends with the empty graph. Fails with
/// [`Error::StructureClaimViolated`] when neither configuration exists,
/// which means the input was not triangle-free planar.
pub fn trifree_elimination_sequence(g: &Graph) -> Result<EliminationSequence> {
    let mut peeler = Peeler::new(g);
    let mut steps = Vec::with_capacity(g.n());
    while peeler.alive > 0 {
        let low = (0..=2).filter_map(|d| peeler.buckets.bucket(d).next()).min();
        if let Some(v) = low {
            peeler.remove_vertex(v);
            steps.push(Step::LowVertex { v });
            continue;
        }
        let pair = peeler
            .buckets
            .bucket(3)
            .find_map(|u| peeler.adj[u].iter().find(|&&w| peeler.degree(w) <= 6).map(|&w| (u, w)));
        let Some((u, v)) = pair else {
            return Err(Error::StructureClaimViolated {
                step: steps.len(),
                remaining: peeler.alive,
            });
        };
        peeler.remove_vertex(u);
        peeler.remove_vertex(v);
        steps.push(Step::Pair { u, v });
    }
    Ok(EliminationSequence { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn cube() -> Graph {
        // Q3 on 3-bit labels; neighbors differ in exactly one bit.
        Graph::from_edges(
            8,
            (0..8usize)
                .flat_map(|a| (0..3).map(move |b| (a, a ^ (1 << b))))
                .filter(|&(a, b)| a < b),
        )
        .unwrap()
    }

    fn icosahedron() -> Graph {
        // Two poles (0, 11) and two staggered pentagons (1..=5, 6..=10).
        let mut edges = Vec::new();
        for i in 0..5 {
            let (a, a2) = (1 + i, 1 + (i + 1) % 5);
            let (b, b2) = (6 + i, 6 + (i + 1) % 5);
            edges.extend([(0, a), (a, a2), (a, b), (a2, b), (b, b2), (b, 11)]);
        }
        Graph::from_edges(12, edges).unwrap()
    }

    /// Replays `seq` forward on a copy of `g`, asserting each step is legal.
    fn replay_degrees(g: &Graph, seq: &EliminationSequence) -> Vec<(usize, usize)> {
        let mut adj: Vec<BTreeSet<usize>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut degrees = Vec::new();
        for step in &seq.steps {
            match *step {
                Step::Edge { v, v1 } => {
                    degrees.push((adj[v].len(), adj[v1].len()));
                    assert!(adj[v].remove(&v1) && adj[v1].remove(&v));
                }
                Step::LowVertex { v } | Step::Pair { u: v, .. } => {
                    let mut gone = vec![v];
                    if let Step::Pair { v: other, .. } = *step {
                        assert!(adj[v].contains(&other));
                        degrees.push((adj[v].len(), adj[other].len()));
                        gone.push(other);
                    } else {
                        degrees.push((adj[v].len(), 0));
                    }
                    for x in gone {
                        for w in std::mem::take(&mut adj[x]) {
                            adj[w].remove(&x);
                        }
                    }
                }
            }
        }
        assert!(adj.iter().all(BTreeSet::is_empty));
        degrees
    }

    #[test]
    fn k4_edges() {
        let g = complete(4);
        let seq = edge_elimination_sequence(&g).unwrap();
        assert_eq!(seq.len(), 6);
        assert!(replay_degrees(&g, &seq).iter().all(|&(d, _)| (1..=3).contains(&d)));
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(
            edge_elimination_sequence(&g).unwrap().steps,
            vec![Step::Edge { v: 0, v1: 1 }]
        );
    }

    #[test]
    fn icosahedron_edges() {
        let g = icosahedron();
        assert!((0..12).all(|v| g.degree(v) == 5));
        let seq = edge_elimination_sequence(&g).unwrap();
        assert_eq!(seq.len(), 30);
        let degrees = replay_degrees(&g, &seq);
        assert_eq!(degrees[0].0, 5);
        assert!(degrees.iter().all(|&(d, _)| (1..=5).contains(&d)));
    }

    #[test]
    fn k7_has_no_low_degree_vertex() {
        let err = edge_elimination_sequence(&complete(7)).unwrap_err();
        assert_eq!(err, Error::NoLowDegreeVertex { step: 0, min_degree: 6 });
    }

    #[test]
    fn c6_low_vertices() {
        let seq = trifree_elimination_sequence(&cycle(6)).unwrap();
        assert_eq!(seq.len(), 6);
        assert!(seq.steps.iter().all(|s| matches!(s, Step::LowVertex { .. })));
    }

    #[test]
    fn star_leaves_first() {
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let seq = trifree_elimination_sequence(&star).unwrap();
        let order: Vec<usize> = seq
            .steps
            .iter()
            .map(|s| match s {
                Step::LowVertex { v } => *v,
                other => panic!("{other:?}"),
            })
            .collect();
        // Leaves 1 and 2 go first; once the center has degree 2 it is the
        // lowest id of degree at most 2.
        assert_eq!(order, vec![1, 2, 0, 3, 4]);
    }

    #[test]
    fn cube_starts_with_a_pair() {
        let g = cube();
        let seq = trifree_elimination_sequence(&g).unwrap();
        assert_eq!(seq.steps[0], Step::Pair { u: 0, v: 1 });
        let degrees = replay_degrees(&g, &seq);
        assert_eq!(degrees[0], (3, 3));
    }

    #[test]
    fn k44_violates_the_structure_claim() {
        // K4,4 is triangle-free, 4-regular and not planar.
        let g = Graph::from_edges(8, (0..4).flat_map(|i| (4..8).map(move |j| (i, j)))).unwrap();
        assert!(matches!(
            trifree_elimination_sequence(&g),
            Err(Error::StructureClaimViolated { step: 0, remaining: 8 })
        ));
    }

    #[test]
    fn json_lines() {
        let seq = EliminationSequence {
            steps: vec![
                Step::Edge { v: 0, v1: 1 },
                Step::LowVertex { v: 2 },
                Step::Pair { u: 3, v: 4 },
            ],
        };
        assert_eq!(
            seq.to_json_lines(),
            "{\"kind\":\"edge\",\"v\":0,\"v1\":1}\n{\"kind\":\"low_vertex\",\"v\":2}\n{\"kind\":\"pair\",\"u\":3,\"v\":4}\n"
        );
    }
}
