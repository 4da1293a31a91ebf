//! Simple undirected graphs on dense vertex ids, plus the graph6 and
//! edge-list text formats.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest vertex count representable with the single-byte graph6 size prefix.
pub const GRAPH6_MAX_N: usize = 62;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. Values are immutable once built;
/// algorithms that need to delete or re-add edges work on private copies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::BadParameters(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced by `members`, relabelled to `0..members.len()` in
    /// the given order, together with the map from new ids back to old ones.
    pub fn induced_subgraph(&self, members: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); members.len()];
        let mut m2 = 0;
        for (i, &v) in members.iter().enumerate() {
            adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect();
            adj[i].sort_unstable();
            m2 += adj[i].len();
        }
        (Graph { adj, m: m2 / 2 }, members.to_vec())
    }

    /// Encodes the graph in graph6 (`n <= 62`).
    pub fn to_graph6(&self) -> Result<String> {
        let n = self.n();
        if n > GRAPH6_MAX_N {
            return Err(Error::BadParameters(format!(
                "graph6 output supports at most {GRAPH6_MAX_N} vertices, got {n}"
            )));
        }
        let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
        out.push((n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(((acc << (6 - nbits)) + 63) as char);
        }
        Ok(out)
    }

    /// Plain-text edge list: the vertex count on the first line, then one
    /// `u v` pair per line in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A set of vertex ids; serializes as a sorted JSON array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Some vertex in both sets, if any.
    pub fn common_element(&self, other: &VertexSet) -> Option<usize> {
        self.0.intersection(&other.0).next().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// Counts the edges with one end in `a` and the other in `b`.
///
/// Fails with [`Error::OverlappingSets`] if the sets share a vertex and with
/// [`Error::VertexOutOfRange`] if either names a vertex not in `g`.
pub fn edges_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    if let Some(vertex) = a.common_element(b) {
        return Err(Error::OverlappingSets { vertex });
    }
    for v in a.iter().chain(b.iter()) {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .iter()
        .map(|u| g.neighbors(u).iter().filter(|&&w| large.contains(w)).count())
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    /// Guesses the format of `text`: a first line that is a bare number or
    /// contains whitespace is an edge list, anything else is graph6. graph6
    /// size bytes start at `?`, so they never look like decimal digits.
    pub fn detect(text: &str) -> GraphFormat {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("");
        if first.is_empty() || first.contains(char::is_whitespace) || first.chars().all(|c| c.is_ascii_digit()) {
            GraphFormat::EdgeList
        } else {
            GraphFormat::Graph6
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edge-list" | "edge_list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::BadParameters(format!("unknown graph format {other:?}"))),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::Graph6 => "graph6",
            GraphFormat::EdgeList => "edge-list",
        })
    }
}

/// Parses a single graph in the named format.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => {
            let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
            let (idx, line) = lines.next().ok_or_else(|| malformed(1, 1, "empty input"))?;
            if let Some((extra, _)) = lines.next() {
                return Err(malformed(extra + 1, 1, "more than one graph; use parse_graph6_lines"));
            }
            parse_graph6_line(line, idx + 1)
        }
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// Parses a file holding one graph6 string per line (blank lines skipped).
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6_line(l, i + 1))
        .collect()
}

fn malformed(line: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::MalformedInput {
        line,
        column,
        reason: reason.into(),
    }
}

fn parse_graph6_line(line: &str, line_no: usize) -> Result<Graph> {
    let line = line.trim();
    let (line, skipped) = match line.strip_prefix(">>graph6<<") {
        Some(rest) => (rest, 10),
        None => (line, 0),
    };
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(malformed(
            line_no,
            skipped + pos + 1,
            format!("byte 0x{:02x} is outside the graph6 range 63..=126", bytes[pos]),
        ));
    }
    let Some(&size) = bytes.first() else {
        return Err(malformed(line_no, skipped + 1, "missing size byte"));
    };
    if size == 126 {
        return Err(malformed(
            line_no,
            skipped + 1,
            format!("multi-byte size prefix (n > {GRAPH6_MAX_N}) is not supported"),
        ));
    }
    let n = (size - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[1..];
    if body.len() != nbits.div_ceil(6) {
        return Err(malformed(
            line_no,
            skipped + 2,
            format!(
                "expected {} data bytes for n = {n}, found {}",
                nbits.div_ceil(6),
                body.len()
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (nbits..body.len() * 6).any(bit) {
        return Err(malformed(line_no, skipped + 1 + body.len(), "non-zero padding bits"));
    }
    Graph::from_edges(n, edges)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let column_of = |t: &str| raw.find(t).map_or(1, |p| p + 1);
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| malformed(line_no, column_of(t), format!("{t:?} is not a vertex id")))
        };
        match tokens.as_slice() {
            [count] if !seen_content => declared_n = Some(parse(count)?),
            [a, b] => {
                let (u, v) = (parse(a)?, parse(b)?);
                if u == v {
                    return Err(malformed(line_no, column_of(a), format!("self-loop at vertex {u}")));
                }
                if let Some(n) = declared_n {
                    if let Some(&bad) = [u, v].iter().find(|&&w| w >= n) {
                        return Err(malformed(
                            line_no,
                            column_of(if bad == u { a } else { b }),
                            format!("vertex {bad} out of range for n = {n}"),
                        ));
                    }
                }
                edges.push((u, v));
            }
            _ => {
                return Err(malformed(
                    line_no,
                    1,
                    "expected \"u v\" (or a lone vertex count on the first line)",
                ))
            }
        }
        seen_content = true;
    }
    let n = declared_n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn graph6_k4() {
        // n = 4 -> 'C'; the six upper-triangle bits are all ones -> 63 + 63 = '~'.
        let g = parse_graph("C~", GraphFormat::Graph6).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(g, k4());
        assert_eq!(k4().to_graph6().unwrap(), "C~");
    }

    #[test]
    fn graph6_bit_order_is_column_major() {
        // Path 0-1-2: bits x(0,1)=1, x(0,2)=0, x(1,2)=1 -> 101000 = 40 -> 'g'.
        let g = parse_graph("Bg", GraphFormat::Graph6).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn graph6_errors() {
        let err = parse_graph("C~~", GraphFormat::Graph6).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { .. }), "{err}");
        let err = parse_graph("C\x10", GraphFormat::Graph6).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { column: 2, .. }), "{err}");
        let err = parse_graph("~?@A", GraphFormat::Graph6).unwrap_err();
        assert!(err.to_string().contains("not supported"));
        // 'B' = 3 vertices needs one byte; padding bits of 'h' (41 = 101001) are set.
        assert!(parse_graph("Bh", GraphFormat::Graph6).is_err());
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));

        let p4 = parse_graph("4\n0 1\n1 2\n2 3", GraphFormat::EdgeList).unwrap();
        assert_eq!(p4.n(), 4);
        assert_eq!(p4.neighbors(0), &[1]);
        assert_eq!(p4.neighbors(1), &[0, 2]);
        assert_eq!(p4.neighbors(2), &[1, 3]);
        assert_eq!(p4.neighbors(3), &[2]);
    }

    #[test]
    fn edge_list_duplicates_and_errors() {
        let g = parse_graph("3\n0 1\n1 0\n0 1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.m(), 1);

        let err = parse_graph("3\n0 1\n2 2\n", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { line: 3, .. }), "{err}");
        let err = parse_graph("3\n0 5\n", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { line: 2, column: 3, .. }), "{err}");
        let err = parse_graph("3\n0 x\n", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { line: 2, .. }), "{err}");
        // Without a count line, n is inferred from the largest id.
        assert_eq!(parse_graph("0 4\n", GraphFormat::EdgeList).unwrap().n(), 5);
    }

    #[test]
    fn edges_between_examples() {
        let g = k4();
        assert_eq!(edges_between(&g, &[0, 1].into(), &[2, 3].into()).unwrap(), 4);
        assert_eq!(edges_between(&g, &VertexSet::new(), &[0, 1, 2].into()).unwrap(), 0);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(edges_between(&p4, &[0, 3].into(), &[1, 2].into()).unwrap(), 2);
        assert_eq!(
            edges_between(&g, &[0, 1].into(), &[1, 2].into()),
            Err(Error::OverlappingSets { vertex: 1 })
        );
    }

    #[test]
    fn format_detection() {
        assert_eq!(GraphFormat::detect("C~\n"), GraphFormat::Graph6);
        assert_eq!(GraphFormat::detect("4\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::detect("0 1\n"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::detect(">>graph6<<C~"), GraphFormat::Graph6);
    }
}
