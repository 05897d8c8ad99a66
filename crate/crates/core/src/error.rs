use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("segment does not strictly cross the hyperplane")]
    NoCrossing,
    #[error("polytope is not full-dimensional (dim {dim}, ambient {ambient})")]
    NotFullDimensional { dim: isize, ambient: usize },
    #[error("point {index} is not a vertex of the convex hull")]
    NotAVertex { index: usize },
    #[error("face dimension {k} out of range {min}..={max}")]
    DimensionOutOfRange { k: isize, min: isize, max: isize },
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("unknown hypergraph node {0}")]
    UnknownNode(usize),
    #[error("vertex {index} lies on the hyperplane")]
    VertexOnHyperplane { index: usize },
    #[error("hyperplane misses the relative interior of the polytope")]
    HyperplaneMissesInterior,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hyperplane search exhausted its budget of {budget} samples")]
    SearchExhausted { budget: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),
    #[error("parse error: {0}")]
    Parse(String),
}
