//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod hnf;
mod matrix;
mod ops;
mod poly;
mod snf;
mod solve;

pub use group::{cokernel, AbelianGroup};
pub use hnf::{
    hermite_normal_form, in_column_lattice, kernel_basis, row_lattice_basis, same_row_lattice,
};
pub use matrix::{big_vec, IntMatrix};
pub(crate) use ops::{add_col, add_row};
pub use ops::{format_log, ElementaryOp};
pub use poly::{interpolate, poly_matrix_det, IntPolynomial, PolyMatrix};
pub use snf::{smith_diagonal, smith_normal_form, SmithDecomposition};
pub use solve::{solve_min_scalar, MinScalarSolution};
