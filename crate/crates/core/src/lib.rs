//! Exact K-theory of the Cuntz-Krieger algebra attached to a finite graph's
//! edge operator, with the matching Ihara zeta identity checks.
//!
//! Everything is computed with arbitrary-precision integers: Smith and
//! Hermite normal forms, cokernels, kernels and polynomial determinants.

pub(crate) mod bigjson;
pub mod edge_operator;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod multigraph;
pub mod par;
pub mod sweep;
pub mod zeta;

pub use edge_operator::{edge_matrix, EdgeMatrix, SimplicityFlags};
pub use error::{Error, Result};
pub use multigraph::{parse_graph, Multigraph};
pub use par::Execution;
