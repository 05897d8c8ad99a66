//! Exact polyhedral combinatorics: face lattices, the face hypergraphs
//! `H_k(P)` and their strong vertex connectivity, hyperplane sections with
//! their face-poset isomorphism, and a constructive ridge-path solver that
//! recurses through sections.

pub mod error;
pub mod exact;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod polytope;
pub mod ridge;
pub mod section;

pub use error::{Error, Result};
pub use exact::{Hyperplane, QVector, Rational};
pub use polytope::{Face, FaceId, FaceLattice, Polytope, VPolytope};
