//! Exact linear algebra over the rationals and prime fields.

pub mod echelon;
pub mod matrix;
pub mod scalar;
pub mod sparse;

pub use echelon::{column_space, nullspace, quotient_dim, rank, solve, Subspace};
pub use matrix::{DenseMatrix, Matrix};
pub use scalar::{is_prime, reduce_mod_p, Field, FieldDescriptor, Fp, PrimeField, Rational, Rationals, Scalar};
pub use sparse::SparseVec;
