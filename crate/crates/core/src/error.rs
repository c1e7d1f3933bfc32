use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A size guard on an exponential enumeration tripped.
    #[error("{what} guard exceeded: limit {limit}, reached {reached}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    /// The collapse search explored more states than its budget allows.
    /// This is not a negative answer.
    #[error("collapse search budget of {budget} states exhausted")]
    BudgetExceeded { budget: usize },

    #[error("graph has isolated vertices {vertices}; independent domination number is infinite")]
    IsolatedVertex { vertices: VertexSet },

    #[error("graph has no edges")]
    NoEdges,

    #[error("{face} is not a face of the complex")]
    NotAFace { face: VertexSet },

    #[error("{face} is not free: contained in {} facets", .containing.len())]
    NotFree {
        face: VertexSet,
        containing: Vec<VertexSet>,
    },

    #[error("certificate step {step}: {reason}")]
    InvalidCertificate { step: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
