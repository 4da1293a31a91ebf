//! Certificates for every property the partitioners promise.
//!
//! Each check either passes or carries a [`Witness`] that can be re-checked
//! on its own: a cycle is a list of distinct vertices with consecutive (and
//! wrap-around) adjacencies, a dense core induces minimum degree above the
//! bound, and so on.

mod planarity;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

pub use planarity::is_planar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Distinct vertices forming a cycle in the order listed.
    Cycle {
        vertices: Vec<usize>,
    },
    /// A vertex set whose induced subgraph has minimum degree above `bound`.
    DenseCore {
        vertices: Vec<usize>,
        bound: usize,
    },
    /// Two parts whose sizes differ by at least two.
    Imbalance {
        parts: [usize; 2],
        sizes: [usize; 2],
    },
    Triangle {
        vertices: [usize; 3],
    },
    /// An edge inside a part that must be independent.
    Edge {
        u: usize,
        v: usize,
    },
    /// A vertex with three or more neighbors inside a linear-forest part.
    HighDegree {
        vertex: usize,
        neighbors: Vec<usize>,
    },
    /// A vertex listed in two parts.
    Overlap {
        vertex: usize,
        parts: [usize; 2],
    },
    /// A vertex of the graph listed in no part.
    Uncovered {
        vertex: usize,
    },
    /// A listed vertex that is not a vertex of the graph.
    OutOfRange {
        vertex: usize,
    },
    PartCount {
        expected: usize,
        actual: usize,
    },
    /// A part below a required minimum size.
    SmallPart {
        part: usize,
        size: usize,
        required: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn from_result(name: impl Into<String>, result: std::result::Result<(), Witness>) -> Self {
        let name = name.into();
        match result {
            Ok(()) => Check {
                name,
                pass: true,
                witness: None,
            },
            Err(w) => Check {
                name,
                pass: false,
                witness: Some(w),
            },
        }
    }
}

/// Outcome of a verification run: `verdict` is `pass` iff every check passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        let verdict = if checks.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report { verdict, checks }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn push(&mut self, check: Check) {
        if !check.pass {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(check);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// First witness among failed checks.
    pub fn witness(&self) -> Option<&Witness> {
        self.failures().find_map(|c| c.witness.as_ref())
    }
}

/// What the subgraph induced by one part must look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartConstraint {
    Degenerate(usize),
    Forest,
    LinearForest,
    Independent,
    Bipartite,
    Unconstrained,
}

impl fmt::Display for PartConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartConstraint::Degenerate(d) => write!(f, "{d}-degenerate"),
            PartConstraint::Forest => f.write_str("forest"),
            PartConstraint::LinearForest => f.write_str("linear-forest"),
            PartConstraint::Independent => f.write_str("independent"),
            PartConstraint::Bipartite => f.write_str("bipartite"),
            PartConstraint::Unconstrained => f.write_str("any"),
        }
    }
}

impl FromStr for PartConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let degenerate = s
            .strip_suffix("-degenerate")
            .or_else(|| s.strip_suffix("deg"))
            .or_else(|| s.strip_prefix("degenerate:"));
        if let Some(d) = degenerate {
            return d
                .parse()
                .map(PartConstraint::Degenerate)
                .map_err(|_| Error::BadParameters(format!("bad degeneracy bound in {s:?}")));
        }
        match s {
            "forest" => Ok(PartConstraint::Forest),
            "linear-forest" | "linear_forest" => Ok(PartConstraint::LinearForest),
            "independent" => Ok(PartConstraint::Independent),
            "bipartite" => Ok(PartConstraint::Bipartite),
            "any" | "unconstrained" => Ok(PartConstraint::Unconstrained),
            other => Err(Error::BadParameters(format!("unknown part constraint {other:?}"))),
        }
    }
}

/// Expected shape of a partition: how many parts, what each part must
/// induce, and whether sizes must be balanced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub parts: usize,
    /// One entry per part; parts beyond the list are unconstrained.
    pub constraints: Vec<PartConstraint>,
    pub equitable: bool,
}

impl PartitionSpec {
    pub fn uniform(parts: usize, constraint: PartConstraint, equitable: bool) -> Self {
        PartitionSpec {
            parts,
            constraints: vec![constraint; parts],
            equitable,
        }
    }

    pub fn constraint(&self, part: usize) -> PartConstraint {
        self.constraints
            .get(part)
            .copied()
            .unwrap_or(PartConstraint::Unconstrained)
    }
}

/// Degeneracy by min-degree peeling.
///
/// Repeatedly removes the lowest-id vertex of minimum current degree. Returns
/// the largest degree seen at removal (0 for graphs with at most one vertex)
/// and the removal order.
pub fn degeneracy_order(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut buckets = DegreeBuckets::new(&degree);
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    let mut floor = 0;
    while let Some((deg, v)) = buckets.pop_lowest(floor) {
        d = d.max(deg);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets.move_vertex(w, degree[w], degree[w] - 1);
                degree[w] -= 1;
            }
        }
        floor = deg.saturating_sub(1);
    }
    (d, order)
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_order(g).0
}

/// Degree buckets keyed by current degree; lowest id first within a bucket.
pub(crate) struct DegreeBuckets {
    buckets: Vec<std::collections::BTreeSet<usize>>,
}

impl DegreeBuckets {
    pub(crate) fn new(degree: &[usize]) -> Self {
        let max = degree.iter().copied().max().unwrap_or(0);
        let mut buckets = vec![std::collections::BTreeSet::new(); max + 1];
        for (v, &d) in degree.iter().enumerate() {
            buckets[d].insert(v);
        }
        DegreeBuckets { buckets }
    }

    pub(crate) fn move_vertex(&mut self, v: usize, from: usize, to: usize) {
        self.buckets[from].remove(&v);
        self.buckets[to].insert(v);
    }

    pub(crate) fn remove(&mut self, v: usize, degree: usize) {
        self.buckets[degree].remove(&v);
    }

    /// Lowest-id vertex in the first non-empty bucket at or above `floor`.
    pub(crate) fn lowest_from(&self, floor: usize) -> Option<(usize, usize)> {
        self.buckets
            .iter()
            .enumerate()
            .skip(floor)
            .find_map(|(d, b)| b.first().map(|&v| (d, v)))
    }

    pub(crate) fn bucket(&self, degree: usize) -> impl Iterator<Item = usize> + '_ {
        self.buckets.get(degree).into_iter().flatten().copied()
    }

    fn pop_lowest(&mut self, floor: usize) -> Option<(usize, usize)> {
        let (d, v) = self.lowest_from(floor)?;
        self.buckets[d].remove(&v);
        Some((d, v))
    }
}

/// The `d`-core witness: what is left after repeatedly deleting vertices of
/// degree at most `d`. Empty iff `g` is `d`-degenerate.
pub fn dense_core(g: &Graph, d: usize) -> Vec<usize> {
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut queue: VecDeque<usize> = g.vertices().filter(|&v| degree[v] <= d).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] <= d {
                    removed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    g.vertices().filter(|&v| !removed[v]).collect()
}

/// Some cycle of `g`, if it has one. Depth-first from the lowest id, visiting
/// neighbors in increasing order; the cycle runs from the ancestor end of the
/// first back edge found down the tree path.
pub fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    for root in g.vertices() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            let Some(&w) = g.neighbors(v).get(top.1) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            if w == parent[v] {
                continue;
            }
            if visited[w] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                cycle.reverse();
                return Some(cycle);
            }
            visited[w] = true;
            parent[w] = v;
            stack.push((w, 0));
        }
    }
    None
}

/// An odd cycle of `g`, if `g` is not bipartite.
pub fn find_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in g.vertices() {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    // Walk both ends up to their lowest common ancestor.
                    let (mut a, mut b) = (v, w);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = parent[a];
                            left.push(a);
                        } else {
                            b = parent[b];
                            right.push(b);
                        }
                    }
                    // Both paths end at the ancestor; keep it once.
                    right.pop();
                    left.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// The lexicographically first triangle `(a, b, c)` with `a < b < c`.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for a in g.vertices() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// `Ok` iff `g` has no triangle; otherwise the first triangle found.
pub fn is_triangle_free(g: &Graph) -> std::result::Result<(), Witness> {
    match find_triangle(g) {
        None => Ok(()),
        Some(vertices) => Err(Witness::Triangle { vertices }),
    }
}

/// Checks the subgraph induced by `members` against `constraint`. Witness
/// vertex ids refer to `g`.
pub fn check_part(g: &Graph, members: &[usize], constraint: PartConstraint) -> std::result::Result<(), Witness> {
    if constraint == PartConstraint::Unconstrained {
        return Ok(());
    }
    let (h, ids) = g.induced_subgraph(members);
    let lift = |vs: Vec<usize>| vs.into_iter().map(|v| ids[v]).collect::<Vec<_>>();
    match constraint {
        PartConstraint::Unconstrained => Ok(()),
        PartConstraint::Degenerate(d) => {
            let core = dense_core(&h, d);
            if core.is_empty() {
                Ok(())
            } else {
                Err(Witness::DenseCore {
                    vertices: sorted(lift(core)),
                    bound: d,
                })
            }
        }
        PartConstraint::Forest => match find_cycle(&h) {
            None => Ok(()),
            Some(c) => Err(Witness::Cycle { vertices: lift(c) }),
        },
        PartConstraint::LinearForest => {
            if let Some(c) = find_cycle(&h) {
                return Err(Witness::Cycle { vertices: lift(c) });
            }
            match h.vertices().find(|&v| h.degree(v) > 2) {
                None => Ok(()),
                Some(v) => Err(Witness::HighDegree {
                    vertex: ids[v],
                    neighbors: lift(h.neighbors(v).to_vec()),
                }),
            }
        }
        PartConstraint::Independent => match h.edges().next() {
            None => Ok(()),
            Some((u, v)) => {
                let (u, v) = (ids[u], ids[v]);
                Err(Witness::Edge {
                    u: u.min(v),
                    v: u.max(v),
                })
            }
        },
        PartConstraint::Bipartite => match find_odd_cycle(&h) {
            None => Ok(()),
            Some(c) => Err(Witness::Cycle { vertices: lift(c) }),
        },
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Checks that `parts` partition `V(g)` as described by `spec`.
///
/// Checks run in a fixed order: `partition` (disjoint and covering),
/// `part_count`, `equitable` (only when requested), then one check per part
/// named `part[i]:<constraint>`.
pub fn check_partition(g: &Graph, parts: &[VertexSet], spec: &PartitionSpec) -> Report {
    let mut checks = Vec::with_capacity(parts.len() + 3);
    checks.push(Check::from_result("partition", coverage(g, parts)));
    checks.push(Check::from_result(
        "part_count",
        if parts.len() == spec.parts {
            Ok(())
        } else {
            Err(Witness::PartCount {
                expected: spec.parts,
                actual: parts.len(),
            })
        },
    ));
    if spec.equitable {
        checks.push(Check::from_result("equitable", balance(parts)));
    }
    for (i, part) in parts.iter().enumerate() {
        let constraint = spec.constraint(i);
        let members: Vec<usize> = part.iter().filter(|&v| v < g.n()).collect();
        checks.push(Check::from_result(
            format!("part[{i}]:{constraint}"),
            check_part(g, &members, constraint),
        ));
    }
    Report::new(checks)
}

pub(crate) fn coverage(g: &Graph, parts: &[VertexSet]) -> std::result::Result<(), Witness> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            if v >= g.n() {
                return Err(Witness::OutOfRange { vertex: v });
            }
            if owner[v] != usize::MAX {
                return Err(Witness::Overlap {
                    vertex: v,
                    parts: [owner[v], i],
                });
            }
            owner[v] = i;
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(vertex) => Err(Witness::Uncovered { vertex }),
        None => Ok(()),
    }
}

fn balance(parts: &[VertexSet]) -> std::result::Result<(), Witness> {
    let (Some(small), Some(large)) = (
        (0..parts.len()).min_by_key(|&i| parts[i].len()),
        (0..parts.len()).max_by_key(|&i| parts[i].len()),
    ) else {
        return Ok(());
    };
    let sizes = [parts[small].len(), parts[large].len()];
    if sizes[1] - sizes[0] <= 1 {
        Ok(())
    } else {
        Err(Witness::Imbalance {
            parts: [small, large],
            sizes,
        })
    }
}
