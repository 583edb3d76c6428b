//! Combinatorial vector fields on simplicial complexes: flows, isolated
//! invariant sets, Conley indices, Morse decompositions, and their exact
//! geometric realization.

pub mod complex;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod flow;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod morse;
pub mod verify;

pub use complex::{SimplexId, SimplexSet, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use field::{Role, VectorField};
pub use flow::{BiSequence, SolutionSeq, System};
pub use homology::Coefficients;
pub use io::Loaded;
