use thiserror::Error;

use crate::verify::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at line {line}, column {column}: {reason}")]
    MalformedInput { line: usize, column: usize, reason: String },

    #[error("vertex sets overlap at vertex {vertex}")]
    OverlappingSets { vertex: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error(
        "elimination step {step}: every non-isolated vertex has degree >= 6 \
         (minimum positive degree {min_degree}); the input is not planar"
    )]
    NoLowDegreeVertex { step: usize, min_degree: usize },

    #[error(
        "elimination step {step}: minimum degree is at least 3 but no edge joins a \
         degree-3 vertex to a vertex of degree at most 6 ({remaining} vertices left); \
         the input is not a triangle-free planar graph"
    )]
    StructureClaimViolated { step: usize, remaining: usize },

    #[error("graph is not triangle-free: {triangle:?} is a triangle")]
    NotTriangleFree { triangle: [usize; 3] },

    #[error("replay step {step}: no swap partner for vertex {vertex}; the input is not planar")]
    RepairFailed { step: usize, vertex: usize },

    #[error("replay step {step}: {detail}")]
    ReplayInvariant { step: usize, detail: String },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("merge with k={k}, ell={ell}, q={q}: no splittable pair and some class has at most q elements")]
    UnreachableCaseII { k: usize, ell: usize, q: usize },

    #[error("merge result violates invariant {0}")]
    MergeInvariant(String),

    #[error("coloring is invalid")]
    InvalidColoring { report: Box<Report> },

    #[error("instance of size {size} exceeds the cap of {cap}")]
    InstanceTooLarge { size: usize, cap: usize },

    #[error("bad generator spec: {0}")]
    BadSpec(String),
}

impl Error {
    /// True for errors that mean the input does not satisfy an algorithm's
    /// hypothesis (non-planar, has a triangle, no coloring), as opposed to
    /// malformed input or an internal failure.
    pub fn is_precondition_violation(&self) -> bool {
        matches!(
            self,
            Error::NoLowDegreeVertex { .. }
                | Error::StructureClaimViolated { .. }
                | Error::NotTriangleFree { .. }
                | Error::RepairFailed { .. }
                | Error::InvalidColoring { .. }
        )
    }
}
