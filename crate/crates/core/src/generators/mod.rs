//! Seeded generators of planar and triangle-free planar graphs.
//!
//! Triangulations are grown by inserting vertices into faces of an explicit
//! face list, so every output is planar by construction. All randomness
//! comes from a ChaCha8 stream seeded with [`GenSpec::seed`].

pub mod exhaustive;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::verify::find_triangle;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    StackedTriangulation,
    FlippedTriangulation,
    PlanarSparse,
    TriangleFreePlanar,
}

impl GenKind {
    pub const ALL: [GenKind; 4] = [
        GenKind::StackedTriangulation,
        GenKind::FlippedTriangulation,
        GenKind::PlanarSparse,
        GenKind::TriangleFreePlanar,
    ];

    fn name(self) -> &'static str {
        match self {
            GenKind::StackedTriangulation => "stacked_triangulation",
            GenKind::FlippedTriangulation => "flipped_triangulation",
            GenKind::PlanarSparse => "planar_sparse",
            GenKind::TriangleFreePlanar => "triangle_free_planar",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.replace('-', "_");
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| Error::BadSpec(format!("unknown generator kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Diagonal flips applied after stacking. Used by every kind except
    /// `StackedTriangulation`.
    #[serde(default)]
    pub flips: usize,
    /// Edges kept by `PlanarSparse`, and the starting edge count for
    /// `TriangleFreePlanar`. Defaults: `2n - 3` and `3n - 6`.
    #[serde(default)]
    pub edges: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            flips: 0,
            edges: None,
            seed,
        }
    }

    pub fn flips(mut self, flips: usize) -> Self {
        self.flips = flips;
        self
    }

    pub fn edges(mut self, edges: usize) -> Self {
        self.edges = Some(edges);
        self
    }
}

/// Generates one graph. Fails with [`Error::BadSpec`] when `n < 3` or the
/// requested edge count exceeds `3n - 6`.
pub fn gen_planar(spec: &GenSpec) -> Result<Graph> {
    let n = spec.n;
    if n < 3 {
        return Err(Error::BadSpec(format!("need n >= 3, got {n}")));
    }
    let max_edges = 3 * n - 6;
    if let Some(e) = spec.edges {
        if e > max_edges {
            return Err(Error::BadSpec(format!(
                "{e} edges requested, at most {max_edges} possible for n={n}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut tri = Triangulation::stacked(n, &mut rng);
    if spec.kind != GenKind::StackedTriangulation {
        tri.flip_randomly(spec.flips, &mut rng);
    }
    let mut edges: Vec<(usize, usize)> = tri.edges.iter().copied().collect();
    match spec.kind {
        GenKind::StackedTriangulation | GenKind::FlippedTriangulation => {}
        GenKind::PlanarSparse => {
            let keep = spec.edges.unwrap_or((2 * n - 3).min(max_edges));
            edges.shuffle(&mut rng);
            edges.truncate(keep);
        }
        GenKind::TriangleFreePlanar => {
            edges.shuffle(&mut rng);
            edges.truncate(spec.edges.unwrap_or(max_edges));
            return break_triangles(n, edges, &mut rng);
        }
    }
    Graph::from_edges(n, edges)
}

/// Deletes a random edge of the first remaining triangle until none is left.
fn break_triangles(n: usize, edges: Vec<(usize, usize)>, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = Graph::from_edges(n, edges)?;
    while let Some([a, b, c]) = find_triangle(&g) {
        let doomed = *[(a, b), (a, c), (b, c)].choose(rng).expect("three sides");
        let (x, y) = (doomed.0.min(doomed.1), doomed.0.max(doomed.1));
        g = Graph::from_edges(n, g.edges().filter(|&e| e != (x, y)))?;
    }
    Ok(g)
}

struct Triangulation {
    /// Oriented faces; every edge is on exactly two of them, once each way.
    faces: Vec<[usize; 3]>,
    /// Directed edge to the face that traverses it.
    face_of: HashMap<(usize, usize), usize>,
    /// Undirected edges as `(min, max)`.
    edges: BTreeSet<(usize, usize)>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Triangulation {
    fn stacked(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut t = Triangulation {
            faces: Vec::new(),
            face_of: HashMap::new(),
            edges: [(0, 1), (0, 2), (1, 2)].into_iter().collect(),
        };
        t.set_face(None, [0, 1, 2]);
        t.set_face(None, [0, 2, 1]);
        for v in 3..n {
            let f = rng.random_range(0..t.faces.len());
            let [a, b, c] = t.faces[f];
            t.set_face(Some(f), [a, b, v]);
            t.set_face(None, [b, c, v]);
            t.set_face(None, [c, a, v]);
            t.edges.extend([key(a, v), key(b, v), key(c, v)]);
        }
        t
    }

    fn set_face(&mut self, slot: Option<usize>, face: [usize; 3]) {
        let f = match slot {
            Some(f) => {
                self.faces[f] = face;
                f
            }
            None => {
                self.faces.push(face);
                self.faces.len() - 1
            }
        };
        for i in 0..3 {
            self.face_of.insert((face[i], face[(i + 1) % 3]), f);
        }
    }

    /// Attempts random flips until `count` succeed or the attempt budget
    /// runs out (small triangulations such as `K4` admit no flip at all).
    fn flip_randomly(&mut self, count: usize, rng: &mut ChaCha8Rng) {
        let mut done = 0;
        let mut attempts = 0;
        while done < count && attempts < 20 * count + 100 {
            attempts += 1;
            let f = rng.random_range(0..self.faces.len());
            let i = rng.random_range(0..3);
            let face = self.faces[f];
            if self.flip(face[i], face[(i + 1) % 3]) {
                done += 1;
            }
        }
    }

    /// Replaces edge `ab` by the other diagonal `cd` of the two faces on it,
    /// unless that would create a loop or a parallel edge.
    fn flip(&mut self, a: usize, b: usize) -> bool {
        let f1 = self.face_of[&(a, b)];
        let f2 = self.face_of[&(b, a)];
        let c = third(self.faces[f1], a, b);
        let d = third(self.faces[f2], b, a);
        if c == d || self.edges.contains(&key(c, d)) {
            return false;
        }
        self.face_of.remove(&(a, b));
        self.face_of.remove(&(b, a));
        self.edges.remove(&key(a, b));
        self.edges.insert(key(c, d));
        self.set_face(Some(f1), [c, a, d]);
        self.set_face(Some(f2), [d, b, c]);
        true
    }
}

/// The vertex of an oriented face following the directed edge `a -> b`.
fn third(face: [usize; 3], a: usize, b: usize) -> usize {
    let i = face.iter().position(|&x| x == a).expect("a on face");
    debug_assert_eq!(face[(i + 1) % 3], b);
    face[(i + 2) % 3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_planar, is_triangle_free};

    #[test]
    fn stacked_four_is_k4() {
        for seed in 0..5 {
            let g = gen_planar(&GenSpec::new(GenKind::StackedTriangulation, 4, seed)).unwrap();
            assert_eq!(g.m(), 6);
        }
    }

    #[test]
    fn flipped_twelve() {
        let g = gen_planar(&GenSpec::new(GenKind::FlippedTriangulation, 12, 1).flips(50)).unwrap();
        assert!(is_planar(&g));
        assert_eq!(g.m(), 30);
    }

    #[test]
    fn flips_escape_three_degeneracy() {
        let stacked = gen_planar(&GenSpec::new(GenKind::StackedTriangulation, 30, 3)).unwrap();
        assert_eq!(crate::verify::degeneracy(&stacked), 3);
        let found = (0..20).any(|seed| {
            let g = gen_planar(&GenSpec::new(GenKind::FlippedTriangulation, 30, seed).flips(200)).unwrap();
            crate::verify::degeneracy(&g) > 3
        });
        assert!(found);
    }

    #[test]
    fn triangle_free_ten() {
        let g = gen_planar(&GenSpec::new(GenKind::TriangleFreePlanar, 10, 7)).unwrap();
        assert!(is_planar(&g));
        assert!(is_triangle_free(&g).is_ok());
    }

    #[test]
    fn sparse_edge_counts() {
        let g = gen_planar(&GenSpec::new(GenKind::PlanarSparse, 20, 2).edges(25)).unwrap();
        assert_eq!(g.m(), 25);
        assert!(is_planar(&g));
        let g = gen_planar(&GenSpec::new(GenKind::PlanarSparse, 20, 2)).unwrap();
        assert_eq!(g.m(), 37);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(
            gen_planar(&GenSpec::new(GenKind::PlanarSparse, 2, 0)),
            Err(Error::BadSpec(_))
        ));
        assert!(matches!(
            gen_planar(&GenSpec::new(GenKind::PlanarSparse, 5, 0).edges(10)),
            Err(Error::BadSpec(_))
        ));
        assert!("cubic".parse::<GenKind>().is_err());
        assert_eq!(
            "flipped-triangulation".parse::<GenKind>().unwrap(),
            GenKind::FlippedTriangulation
        );
    }

    #[test]
    fn same_seed_same_graph() {
        for kind in GenKind::ALL {
            let spec = GenSpec::new(kind, 25, 11).flips(40);
            let a = gen_planar(&spec).unwrap();
            let b = gen_planar(&spec).unwrap();
            assert_eq!(a.to_graph6().unwrap(), b.to_graph6().unwrap());
        }
    }
}
