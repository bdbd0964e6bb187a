use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, SparseVec};

/// `(A, B, ε)`: an algebra `A`, a commutative algebra `B` and a unital
/// algebra map `ε: B → A` with central image.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<F: Field> {
    a: FiniteAlgebra<F>,
    b: FiniteAlgebra<F>,
    /// `eps[j]` = coordinates of `ε(b_j)` in `A`.
    eps: Vec<SparseVec<F::Elem>>,
    /// `merged[(β * dA + i) * dA + j]` = `ε(b_β) a_i a_j`.
    merged: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Triple<F> {
    /// `images[j]` are the coordinates of `ε(b_j)`.
    pub fn new(a: FiniteAlgebra<F>, b: FiniteAlgebra<F>, images: Vec<Vec<F::Elem>>) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::Mismatch("A and B are over different fields".into()));
        }
        if images.len() != b.dim() {
            return Err(Error::Shape(format!("ε has {} columns (expected dim B = {})", images.len(), b.dim())));
        }
        if let Some((j, v)) = images.iter().enumerate().find(|(_, v)| v.len() != a.dim()) {
            return Err(Error::Shape(format!("ε column {j} has length {} (expected dim A = {})", v.len(), a.dim())));
        }
        let eps = images.iter().map(|v| SparseVec::from_dense(v)).collect();
        Self::from_sparse(a, b, eps)
    }

    pub(crate) fn from_sparse(a: FiniteAlgebra<F>, b: FiniteAlgebra<F>, eps: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        let (da, db) = (a.dim(), b.dim());
        for i in 0..db {
            for j in i + 1..db {
                if b.mul_basis(i, j) != b.mul_basis(j, i) {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        let map = |x: &SparseVec<F::Elem>| {
            let mut out = SparseVec::new();
            for (k, c) in x.iter() {
                out.axpy(c, &eps[*k]);
            }
            out
        };
        for i in 0..db {
            for j in 0..db {
                if map(b.mul_basis(i, j)) != a.mul(&eps[i], &eps[j]) {
                    return Err(Error::EpsNotMultiplicative(i, j));
                }
            }
        }
        if map(b.unit()) != *a.unit() {
            return Err(Error::EpsNotUnital);
        }
        for (j, e) in eps.iter().enumerate() {
            for i in 0..da {
                if a.mul_vec_basis(e, i) != a.mul_basis_vec(i, e) {
                    return Err(Error::ImageNotCentral { b: j, a: i });
                }
            }
        }
        let mut merged = Vec::with_capacity(db * da * da);
        for e in &eps {
            for i in 0..da {
                let ei = a.mul_vec_basis(e, i);
                for j in 0..da {
                    merged.push(a.mul_vec_basis(&ei, j));
                }
            }
        }
        Ok(Triple { a, b, eps, merged })
    }

    /// `B = k`, `ε` the unit map.
    pub fn over_ground(a: FiniteAlgebra<F>) -> Self {
        let b = FiniteAlgebra::ground(a.field().clone());
        let unit = a.unit().clone();
        Self::from_sparse(a, b, vec![unit]).expect("unit map is a central algebra map")
    }

    /// `B = A`, `ε = id`; requires `A` commutative.
    pub fn identity(a: FiniteAlgebra<F>) -> Result<Self> {
        let one = a.field().one();
        let eps = (0..a.dim()).map(|i| SparseVec::unit(i, one.clone())).collect();
        Self::from_sparse(a.clone(), a, eps)
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn a(&self) -> &FiniteAlgebra<F> {
        &self.a
    }

    pub fn b(&self) -> &FiniteAlgebra<F> {
        &self.b
    }

    pub fn eps_basis(&self, j: usize) -> &SparseVec<F::Elem> {
        &self.eps[j]
    }

    /// `ε(x)` for `x` in `B`.
    pub fn eps(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = SparseVec::new();
        for (k, c) in x.iter() {
            out.axpy(c, &self.eps[*k]);
        }
        out
    }

    /// Dense `dim A × dim B` matrix of `ε`.
    pub fn eps_rows(&self) -> Vec<Vec<F::Elem>> {
        let zero = self.field().zero();
        let cols: Vec<Vec<F::Elem>> = self.eps.iter().map(|e| e.to_dense(self.a.dim(), &zero)).collect();
        (0..self.a.dim()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    /// `ε(b_β) a_i a_j`
    pub fn merged(&self, beta: usize, i: usize, j: usize) -> &SparseVec<F::Elem> {
        let da = self.a.dim();
        &self.merged[(beta * da + i) * da + j]
    }

    /// True when `B` is one-dimensional, so the secondary complex is the ordinary one.
    pub fn has_ground_b(&self) -> bool {
        self.b.dim() == 1
    }
}
