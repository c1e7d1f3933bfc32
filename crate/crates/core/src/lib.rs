//! Non-cover complexes of graphs and the machinery needed to check their
//! collapsibility: exact domination numbers, minimal exclusion sequences,
//! elementary collapses with replayable certificates, rational homology and
//! rainbow cover search.
//!
//! Vertices are 1-based throughout. Every enumeration that is exponential in
//! the input is guarded by an explicit limit and reports when the limit trips.

pub mod collapse;
pub mod complexes;
pub mod domination;
pub mod error;
pub mod graphs;
pub mod homology;
pub mod mes;
pub mod rainbow;
pub mod vertex_set;

pub use complexes::{alexander_dual, independence_complex, noncover_complex, SimplicialComplex};
pub use domination::{igamma, igamma_w, DominationValue, DominationWitness};
pub use error::{Error, Result};
pub use graphs::{Edge, Graph};
pub use vertex_set::{Vertex, VertexSet};
