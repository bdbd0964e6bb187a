//! The small triples used throughout the test suites and the self-test.

use std::sync::Arc;

use crate::algebra::{Bimodule, FiniteAlgebra, Triple};
use crate::linalg::{Field, SparseVec};

/// `(k[x]/(x^a), k[y]/(y^b), y ↦ x^s)`
pub fn power_triple<F: Field>(field: F, a: usize, b: usize, s: usize) -> Triple<F> {
    let one = field.one();
    let alg_a = FiniteAlgebra::truncated_polynomial(field.clone(), "x", a);
    let alg_b = FiniteAlgebra::truncated_polynomial(field, "y", b);
    let eps = (0..b)
        .map(|k| if k * s < a { SparseVec::unit(k * s, one.clone()) } else { SparseVec::new() })
        .collect();
    Triple::from_sparse(alg_a, alg_b, eps).expect("power map is a triple")
}

/// `(k[x]/(x²), k, unit)`
pub fn t2<F: Field>(field: F) -> Triple<F> {
    Triple::over_ground(FiniteAlgebra::truncated_polynomial(field, "x", 2))
}

/// `(k[x]/(x²), k[x]/(x²), id)`
pub fn t3<F: Field>(field: F) -> Triple<F> {
    Triple::identity(FiniteAlgebra::truncated_polynomial(field, "x", 2)).expect("commutative")
}

/// `(k[x]/(x⁴), k[y]/(y²), y ↦ x²)`
pub fn t4<F: Field>(field: F) -> Triple<F> {
    power_triple(field, 4, 2, 2)
}

/// `(k[x]/(x³), k[y]/(y²), y ↦ x²)`
pub fn t5<F: Field>(field: F) -> Triple<F> {
    power_triple(field, 3, 2, 2)
}

/// `(M_2(k), k, unit)`
pub fn matrix2<F: Field>(field: F) -> Triple<F> {
    Triple::over_ground(FiniteAlgebra::matrix_algebra(field, 2))
}

pub const NAMES: [&str; 5] = ["T2", "T3", "T4", "T5", "M2"];

pub fn by_name<F: Field>(field: F, name: &str) -> Option<Triple<F>> {
    Some(match name.to_ascii_uppercase().as_str() {
        "T2" => t2(field),
        "T3" => t3(field),
        "T4" => t4(field),
        "T5" => t5(field),
        "M2" => matrix2(field),
        _ => return None,
    })
}

/// The regular bimodule of a triple.
pub fn regular<F: Field>(triple: Triple<F>) -> Arc<Bimodule<F>> {
    Arc::new(Bimodule::regular(Arc::new(triple)))
}
