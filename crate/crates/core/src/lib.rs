//! Secondary Hochschild cohomology of finite-dimensional triples `(A, B, ε)`.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod complex;
pub mod error;
pub mod extensions;
pub mod gerstenhaber;
pub mod hodge;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod selftest;

pub use error::{Error, Result};
