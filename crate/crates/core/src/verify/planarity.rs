//! Left-right planarity test (Brandes' formulation of de Fraysseix and
//! Rosenstiehl's criterion), testing phase only: no embedding is built.

use crate::graph::Graph;

use super::find_triangle;

/// True iff `g` is planar.
///
/// Cheap necessary conditions go first: `m <= 3n - 6`, and `m <= 2n - 4`
/// when the graph has no triangle. Everything that survives them runs the
/// full left-right test.
pub fn is_planar(g: &Graph) -> bool {
    let (n, m) = (g.n(), g.m());
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    if n >= 3 && m > 2 * n - 4 && find_triangle(g).is_none() {
        return false;
    }
    LrTest::new(g).run()
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Edges are numbered once; `src`/`dst` hold the DFS orientation.
struct LrTest<'a> {
    g: &'a Graph,
    edge_ids: Vec<Vec<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    refs: Vec<usize>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'a> LrTest<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let mut edge_ids = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in g.edges() {
            edge_ids[u].push(m);
            edge_ids[v].push(m);
            m += 1;
        }
        LrTest {
            g,
            edge_ids,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out_edges: vec![Vec::new(); n],
            refs: vec![NONE; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let mut roots = Vec::new();
        for v in self.g.vertices() {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        for v in self.g.vertices() {
            let mut out = std::mem::take(&mut self.out_edges[v]);
            out.sort_by_key(|&e| self.nesting_depth[e]);
            self.out_edges[v] = out;
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            let vw = self.edge_between(v, i, w);
            if self.oriented[vw] {
                continue;
            }
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.out_edges[v].push(vw);
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw];
            if self.lowpt2[vw] < self.height[v] {
                // chordal
                self.nesting_depth[vw] += 1;
            }
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn edge_between(&self, v: usize, i: usize, w: usize) -> usize {
        // Ids are handed out in lexicographic edge order, so edge_ids[v] is
        // sorted by the other endpoint exactly like the neighbor list.
        debug_assert!(self.g.neighbors(v)[i] == w);
        self.edge_ids[v][i]
    }

    fn conflicting(&self, iv: Interval, b: usize) -> bool {
        !iv.is_empty() && self.lowpt[iv.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt.get(p.right.low).copied().unwrap_or(NONE);
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = std::mem::take(&mut self.out_edges[v]);
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // Merge return edges of ei into p.right.
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into p.left.
        while let Some(&top) = self.stack.last() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.refs[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if p.left.low != NONE {
                self.refs[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                    hl
                } else {
                    hr
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn small_examples() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        let k33 = graph(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert!(!is_planar(&k33));
        // K3,3 minus an edge is planar.
        let k33e = graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]);
        assert!(is_planar(&k33e));
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        // 15 edges: passes m <= 3n - 6 = 24, and even m <= 2n - 4 = 16.
        assert!(g.m() <= 2 * g.n() - 4);
        assert!(!is_planar(&g));
    }

    #[test]
    fn rustworkx_cases() {
        let planar: &[&[(usize, usize)]] = &[
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 6),
                (6, 7),
                (7, 1),
                (1, 5),
                (5, 2),
                (2, 4),
                (4, 5),
                (5, 7),
            ],
            &[
                (0, 1),
                (1, 2),
                (3, 4),
                (4, 5),
                (6, 7),
                (7, 8),
                (0, 3),
                (3, 6),
                (1, 4),
                (4, 7),
                (2, 5),
                (5, 8),
            ],
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (1, 7),
                (1, 8),
                (1, 10),
                (1, 11),
                (2, 3),
                (2, 4),
                (2, 6),
                (2, 7),
                (2, 9),
                (2, 10),
                (2, 11),
                (3, 4),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 7),
                (6, 7),
                (7, 8),
                (7, 9),
                (7, 10),
                (8, 10),
                (9, 10),
                (10, 11),
            ],
            &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)],
            &[
                (3, 10),
                (2, 13),
                (1, 13),
                (7, 11),
                (0, 8),
                (8, 13),
                (0, 2),
                (0, 7),
                (0, 10),
                (1, 7),
            ],
        ];
        let non_planar: &[&[(usize, usize)]] = &[
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (6, 7),
                (7, 8),
                (8, 6),
            ],
            &[
                (1, 5),
                (1, 6),
                (1, 7),
                (2, 6),
                (2, 3),
                (3, 5),
                (3, 7),
                (4, 5),
                (4, 6),
                (4, 7),
            ],
            &[
                (1, 2),
                (4, 13),
                (0, 13),
                (4, 5),
                (7, 10),
                (1, 7),
                (0, 3),
                (2, 6),
                (5, 6),
                (7, 13),
                (4, 8),
                (0, 8),
                (0, 9),
                (2, 13),
                (6, 7),
                (3, 6),
                (2, 8),
            ],
            &[
                (0, 7),
                (3, 11),
                (3, 4),
                (8, 9),
                (4, 11),
                (1, 7),
                (1, 13),
                (1, 11),
                (3, 5),
                (5, 7),
                (1, 3),
                (0, 4),
                (5, 11),
                (5, 13),
            ],
        ];
        for edges in planar {
            assert!(is_planar(&graph(14, edges)), "{edges:?}");
        }
        for edges in non_planar {
            assert!(!is_planar(&graph(14, edges)), "{edges:?}");
        }
    }

    /// Labelled planar graph counts on n vertices (OEIS A066537).
    #[test]
    fn labelled_counts_up_to_six() {
        let expected = [1u64, 1, 2, 8, 64, 1023, 32071];
        for (n, &want) in expected.iter().enumerate() {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut count = 0u64;
            for mask in 0u64..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e);
                if is_planar(&Graph::from_edges(n, edges).unwrap()) {
                    count += 1;
                }
            }
            assert_eq!(count, want, "n = {n}");
        }
    }
}
