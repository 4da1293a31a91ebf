//! Equitable partitions of planar graphs.
//!
//! The crate turns a handful of constructive induction arguments into
//! algorithms and pairs every one of them with an independent checker:
//!
//! * [`partitioners`] splits a planar graph into two 3-degenerate parts or
//!   three 2-degenerate parts, and a triangle-free planar graph into two
//!   2-degenerate parts, all with sizes differing by at most one.
//! * [`setmerge`] merges color classes pairwise into large blocks; fed with an
//!   acyclic 5-coloring it yields an equitable split into two forests and one
//!   arbitrary part.
//! * [`verify`] certifies every promised property and hands back a witness
//!   (a cycle, a dense core, an imbalance) whenever a property fails.
//! * [`coloring`], [`oracle`] and [`generators`] supply desk-scale colorings,
//!   brute-force ground truth and deterministic test corpora.

pub mod coloring;
pub mod elimination;
mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod partitioners;
pub mod setmerge;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{edges_between, parse_graph, Graph, GraphFormat, VertexSet};
