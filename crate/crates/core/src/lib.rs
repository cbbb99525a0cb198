//! Exact path algebra on a finite vertex set.
//!
//! Elementary paths, chains with rational coefficients, weighted face and
//! co-face operators on the full and regular path spaces, sparse matrix
//! materialization, and executable identity suites.

pub mod error;
pub mod operators;
pub mod pathspace;
pub mod regular;
pub mod scalar;
pub mod verifier;

pub mod cli;

pub use error::{Error, ErrorKind, Result};
pub use operators::{GradedOperator, OperatorMatrix};
pub use pathspace::{Basis, Chain, ElementaryPath, Space, Vertex, VertexSet, Weighting};
pub use scalar::Scalar;

/// Default limit on the dimension of any single basis.
pub const DEFAULT_BASIS_CAP: usize = 1_000_000;
