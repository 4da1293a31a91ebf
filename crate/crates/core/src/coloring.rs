//! Exact backtracking colorers for small graphs, and a coloring validator.
//!
//! The search assigns vertices in order of decreasing degree (ties by id)
//! and tries colors in increasing order, never opening more than one new
//! color at a time. For acyclic colorings every unordered color pair keeps a
//! union-find over the vertices carrying those two colors; giving `v` color
//! `c` closes a two-colored cycle exactly when two neighbors of `v` with the
//! same other color `d` already share a `{c, d}` component.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::verify::{check_part, coverage, Check, PartConstraint, Report};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringKind {
    Proper,
    Acyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub kind: ColoringKind,
    /// One class per color; some may be empty.
    pub classes: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringOutcome {
    Found(Coloring),
    /// The whole search space was explored.
    NoColoring,
    BudgetExhausted,
}

impl ColoringOutcome {
    pub fn found(self) -> Option<Coloring> {
        match self {
            ColoringOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches for a proper `k`-coloring with no two-colored cycle. `budget`
/// caps the number of color assignments tried.
pub fn exact_acyclic_coloring(g: &Graph, k: usize, budget: u64) -> ColoringOutcome {
    Search::new(g, k, budget, ColoringKind::Acyclic).run()
}

pub fn exact_proper_coloring(g: &Graph, k: usize, budget: u64) -> ColoringOutcome {
    Search::new(g, k, budget, ColoringKind::Proper).run()
}

const NO_COLOR: usize = usize::MAX;

/// Union-find without path compression, so unions can be undone in order.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns the root that was attached below the other one, if any.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return None;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        Some(b)
    }

    fn undo(&mut self, child: usize) {
        let root = self.parent[child];
        self.size[root] -= self.size[child];
        self.parent[child] = child;
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    kind: ColoringKind,
    order: Vec<usize>,
    color: Vec<usize>,
    /// One union-find per unordered color pair, indexed by `pair_index`.
    pairs: Vec<RollbackDsu>,
    budget: u64,
    nodes: u64,
}

enum Flow {
    Done,
    Exhausted,
    Backtrack,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, budget: u64, kind: ColoringKind) -> Self {
        let mut order: Vec<usize> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let pair_count = if kind == ColoringKind::Acyclic {
            k * k.saturating_sub(1) / 2
        } else {
            0
        };
        Search {
            g,
            k,
            kind,
            order,
            color: vec![NO_COLOR; g.n()],
            pairs: (0..pair_count).map(|_| RollbackDsu::new(g.n())).collect(),
            budget,
            nodes: 0,
        }
    }

    fn pair_index(&self, c: usize, d: usize) -> usize {
        let (a, b) = (c.min(d), c.max(d));
        // Row-major index into the strict upper triangle of a k x k table.
        a * (2 * self.k - a - 1) / 2 + (b - a - 1)
    }

    fn run(mut self) -> ColoringOutcome {
        match self.extend(0, 0) {
            Flow::Done => {
                let mut classes = vec![VertexSet::new(); self.k];
                for v in self.g.vertices() {
                    classes[self.color[v]].insert(v);
                }
                ColoringOutcome::Found(Coloring {
                    kind: self.kind,
                    classes,
                })
            }
            Flow::Exhausted => ColoringOutcome::BudgetExhausted,
            Flow::Backtrack => ColoringOutcome::NoColoring,
        }
    }

    fn extend(&mut self, pos: usize, used: usize) -> Flow {
        if pos == self.order.len() {
            return Flow::Done;
        }
        let v = self.order[pos];
        for c in 0..self.k.min(used + 1) {
            if self.nodes >= self.budget {
                return Flow::Exhausted;
            }
            self.nodes += 1;
            let Some(undo) = self.assign(v, c) else {
                continue;
            };
            match self.extend(pos + 1, used.max(c + 1)) {
                Flow::Backtrack => {}
                other => return other,
            }
            self.unassign(v, undo);
        }
        Flow::Backtrack
    }

    /// Colors `v` with `c` if that stays valid. Returns the unions to undo.
    fn assign(&mut self, v: usize, c: usize) -> Option<Vec<(usize, usize)>> {
        let g = self.g;
        if g.neighbors(v).iter().any(|&w| self.color[w] == c) {
            return None;
        }
        let mut undo = Vec::new();
        if self.kind == ColoringKind::Acyclic {
            for d in (0..self.k).filter(|&d| d != c) {
                let p = self.pair_index(c, d);
                let mut roots: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| self.color[w] == d)
                    .map(|&w| self.pairs[p].find(w))
                    .collect();
                let before = roots.len();
                roots.sort_unstable();
                roots.dedup();
                if roots.len() < before {
                    self.rollback(&undo);
                    return None;
                }
                for r in roots {
                    if let Some(child) = self.pairs[p].union(v, r) {
                        undo.push((p, child));
                    }
                }
            }
        }
        self.color[v] = c;
        Some(undo)
    }

    fn unassign(&mut self, v: usize, undo: Vec<(usize, usize)>) {
        self.color[v] = NO_COLOR;
        self.rollback(&undo);
    }

    fn rollback(&mut self, undo: &[(usize, usize)]) {
        for &(p, child) in undo.iter().rev() {
            self.pairs[p].undo(child);
        }
    }
}

/// Checks that `c` partitions `V(g)` into independent classes and, for an
/// acyclic coloring, that every two classes induce a forest.
///
/// Check names: `partition`, `class[i]:independent`, `classes[i,j]:forest`.
pub fn validate_coloring(g: &Graph, c: &Coloring) -> Report {
    let mut report = Report::new(vec![Check::from_result("partition", coverage(g, &c.classes))]);
    let in_range = |s: &VertexSet| s.iter().filter(|&v| v < g.n()).collect::<Vec<_>>();
    for (i, class) in c.classes.iter().enumerate() {
        report.push(Check::from_result(
            format!("class[{i}]:independent"),
            check_part(g, &in_range(class), PartConstraint::Independent),
        ));
    }
    if c.kind == ColoringKind::Acyclic {
        for i in 0..c.classes.len() {
            for j in i + 1..c.classes.len() {
                let both = in_range(&c.classes[i].union(&c.classes[j]));
                let result = check_part(g, &both, PartConstraint::Forest);
                report.push(Check::from_result(format!("classes[{i},{j}]:forest"), result));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Witness;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.extend([(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
        }
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn c4_acyclic() {
        let c4 = cycle(4);
        assert_eq!(
            exact_acyclic_coloring(&c4, 2, DEFAULT_BUDGET),
            ColoringOutcome::NoColoring
        );
        let c = exact_acyclic_coloring(&c4, 3, DEFAULT_BUDGET).found().unwrap();
        assert!(validate_coloring(&c4, &c).passed());
        assert_eq!(c.classes.len(), 3);
    }

    #[test]
    fn proper_examples() {
        let k4 = complete(4);
        assert_eq!(
            exact_proper_coloring(&k4, 3, DEFAULT_BUDGET),
            ColoringOutcome::NoColoring
        );
        let c = exact_proper_coloring(&k4, 4, DEFAULT_BUDGET).found().unwrap();
        assert!(c.classes.iter().all(|s| s.len() == 1));

        let p = petersen();
        let c = exact_proper_coloring(&p, 3, DEFAULT_BUDGET).found().unwrap();
        assert!(validate_coloring(&p, &c).passed());
        assert_eq!(
            exact_proper_coloring(&p, 2, DEFAULT_BUDGET),
            ColoringOutcome::NoColoring
        );
    }

    #[test]
    fn tiny_budget_runs_out() {
        assert_eq!(
            exact_acyclic_coloring(&petersen(), 3, 3),
            ColoringOutcome::BudgetExhausted
        );
    }

    #[test]
    fn empty_graph_and_zero_colors() {
        let c = exact_acyclic_coloring(&Graph::empty(0), 0, 10).found().unwrap();
        assert!(c.classes.is_empty());
        assert_eq!(
            exact_proper_coloring(&Graph::empty(1), 0, 10),
            ColoringOutcome::NoColoring
        );
    }

    #[test]
    fn validator_examples() {
        let c4 = cycle(4);
        let bad = Coloring {
            kind: ColoringKind::Acyclic,
            classes: vec![[0, 2].into(), [1, 3].into()],
        };
        let report = validate_coloring(&c4, &bad);
        assert!(!report.passed());
        assert_eq!(
            report.witness(),
            Some(&Witness::Cycle {
                vertices: vec![0, 1, 2, 3]
            })
        );

        let good = Coloring {
            kind: ColoringKind::Acyclic,
            classes: vec![[0, 2].into(), [1].into(), [3].into()],
        };
        assert!(validate_coloring(&c4, &good).passed());

        let improper = Coloring {
            kind: ColoringKind::Proper,
            classes: vec![[0, 1].into(), [2, 3].into()],
        };
        assert_eq!(
            validate_coloring(&c4, &improper).witness(),
            Some(&Witness::Edge { u: 0, v: 1 })
        );

        let missing = Coloring {
            kind: ColoringKind::Proper,
            classes: vec![[0, 2].into(), [1].into()],
        };
        assert_eq!(
            validate_coloring(&c4, &missing).witness(),
            Some(&Witness::Uncovered { vertex: 3 })
        );
    }

    #[test]
    fn json_shape() {
        let c = Coloring {
            kind: ColoringKind::Acyclic,
            classes: vec![[0, 2].into(), VertexSet::new()],
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"acyclic","classes":[[0,2],[]]}"#
        );
    }
}
