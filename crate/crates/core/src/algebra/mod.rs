//! Finite-dimensional algebras, triples `(A, B, ε)`, bimodules and derivations.

mod bimodule;
mod derivation;
mod finite;
mod triple;

pub use bimodule::Bimodule;
pub use derivation::{
    derivation_space, invariant_submodule, is_derivation, pullback_derivation, pullback_space, DerivationKind,
    LinearMap,
};
pub use finite::FiniteAlgebra;
pub use triple::Triple;
