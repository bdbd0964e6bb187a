use std::sync::Arc;

use crate::algebra::Triple;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, SparseVec};

/// An `A`-bimodule on which `ε(B)` acts the same from both sides.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    triple: Arc<Triple<F>>,
    name: String,
    dim: usize,
    /// `left[i]`: matrix of `m ↦ e_i m`.
    left: Vec<DenseMatrix<F::Elem>>,
    /// `right[i]`: matrix of `m ↦ m e_i`.
    right: Vec<DenseMatrix<F::Elem>>,
    symmetric: bool,
    regular: bool,
}

impl<F: Field> PartialEq for Bimodule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.triple == other.triple && self.left == other.left && self.right == other.right
    }
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        triple: Arc<Triple<F>>,
        name: impl Into<String>,
        dim: usize,
        left: Vec<DenseMatrix<F::Elem>>,
        right: Vec<DenseMatrix<F::Elem>>,
    ) -> Result<Self> {
        let da = triple.a().dim();
        for (side, tables) in [("left", &left), ("right", &right)] {
            if tables.len() != da {
                return Err(Error::Shape(format!("{side} action has {} tables (expected dim A = {da})", tables.len())));
            }
            if let Some(i) = tables.iter().position(|m| m.n != dim) {
                return Err(Error::Shape(format!("{side} action table {i} is not {dim}x{dim}")));
            }
        }
        let a = triple.a();
        let regular = dim == da && (0..da).all(|i| left[i] == a.left_regular(i) && right[i] == a.right_regular(i));
        let symmetric = left == right;
        let m = Bimodule { triple, name: name.into(), dim, left, right, symmetric, regular };
        m.check_axioms()?;
        Ok(m)
    }

    /// `M = A` with multiplication on both sides.
    pub fn regular(triple: Arc<Triple<F>>) -> Self {
        let a = triple.a();
        let left = (0..a.dim()).map(|i| a.left_regular(i)).collect();
        let right = (0..a.dim()).map(|i| a.right_regular(i)).collect();
        let d = a.dim();
        Self::new(triple, "A", d, left, right).expect("regular bimodule")
    }

    pub fn zero(triple: Arc<Triple<F>>) -> Self {
        let da = triple.a().dim();
        let empty = DenseMatrix { n: 0, data: Vec::new() };
        Self::new(triple, "0", 0, vec![empty.clone(); da], vec![empty; da]).expect("zero bimodule")
    }

    fn check_axioms(&self) -> Result<()> {
        let a = self.triple.a();
        let da = a.dim();
        let zero = self.field().zero();
        let one = self.field().one();
        for i in 0..da {
            for j in 0..da {
                let prod = a.mul_basis(i, j);
                if self.left[i].mul(&self.left[j], &zero) != self.left_action(prod) {
                    return Err(Error::BimoduleAxiom(format!("left action not multiplicative at ({i},{j})")));
                }
                if self.right[j].mul(&self.right[i], &zero) != self.right_action(prod) {
                    return Err(Error::BimoduleAxiom(format!("right action not multiplicative at ({i},{j})")));
                }
                if self.left[i].mul(&self.right[j], &zero) != self.right[j].mul(&self.left[i], &zero) {
                    return Err(Error::BimoduleAxiom(format!("left and right actions do not commute at ({i},{j})")));
                }
            }
        }
        let id = DenseMatrix::identity(self.dim, &zero, &one);
        if self.left_action(a.unit()) != id {
            return Err(Error::BimoduleAxiom("unit does not act as the identity on the left".into()));
        }
        if self.right_action(a.unit()) != id {
            return Err(Error::BimoduleAxiom("unit does not act as the identity on the right".into()));
        }
        for beta in 0..self.triple.b().dim() {
            let e = self.triple.eps_basis(beta);
            if self.left_action(e) != self.right_action(e) {
                return Err(Error::BimoduleAxiom(format!(
                    "ε-centrality fails at B-basis element {beta}: ε(b)m ≠ mε(b)"
                )));
            }
        }
        Ok(())
    }

    pub fn triple(&self) -> &Arc<Triple<F>> {
        &self.triple
    }

    pub fn field(&self) -> &F {
        self.triple.field()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &DenseMatrix<F::Elem> {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &DenseMatrix<F::Elem> {
        &self.right[i]
    }

    /// `a m = m a` for all `a`, `m`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The regular bimodule `M = A`.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Matrix of `m ↦ x m`.
    pub fn left_action(&self, x: &SparseVec<F::Elem>) -> DenseMatrix<F::Elem> {
        let mut out = DenseMatrix::zeros(self.dim, &self.field().zero());
        for (k, c) in x.iter() {
            out.add_scaled(c, &self.left[*k]);
        }
        out
    }

    /// Matrix of `m ↦ m x`.
    pub fn right_action(&self, x: &SparseVec<F::Elem>) -> DenseMatrix<F::Elem> {
        let mut out = DenseMatrix::zeros(self.dim, &self.field().zero());
        for (k, c) in x.iter() {
            out.add_scaled(c, &self.right[*k]);
        }
        out
    }

    /// `x m` for `m` given densely.
    pub fn act_left(&self, x: &SparseVec<F::Elem>, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field().zero(); self.dim];
        for (k, c) in x.iter() {
            let scaled: Vec<F::Elem> = m.iter().map(|v| c.clone() * v).collect();
            self.left[*k].apply_add(&scaled, &mut out);
        }
        out
    }

    /// `m x` for `m` given densely.
    pub fn act_right(&self, m: &[F::Elem], x: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![self.field().zero(); self.dim];
        for (k, c) in x.iter() {
            let scaled: Vec<F::Elem> = m.iter().map(|v| c.clone() * v).collect();
            self.right[*k].apply_add(&scaled, &mut out);
        }
        out
    }

    /// Action tables as nested rows, for serialization.
    pub fn tables(&self) -> (Vec<Vec<Vec<F::Elem>>>, Vec<Vec<Vec<F::Elem>>>) {
        (self.left.iter().map(DenseMatrix::to_rows).collect(), self.right.iter().map(DenseMatrix::to_rows).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;
    use crate::linalg::{Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn scalar(x: i64) -> DenseMatrix<Rational> {
        DenseMatrix { n: 1, data: vec![q(x)] }
    }

    #[test]
    fn regular_and_zero() {
        let t = Arc::new(Triple::over_ground(FiniteAlgebra::matrix_algebra(Rationals, 2)));
        let m = Bimodule::regular(t.clone());
        assert!(m.is_regular());
        assert!(!m.is_symmetric());
        assert_eq!(Bimodule::zero(t).dim(), 0);
    }

    #[test]
    fn eps_centrality_is_checked() {
        // A = B = k × k, ε = id; M = k with the first factor acting on the left and the second on the right.
        let kk = FiniteAlgebra::diagonal(Rationals, 2);
        let t = Arc::new(Triple::identity(kk).unwrap());
        let err = Bimodule::new(t, "k", 1, vec![scalar(1), scalar(0)], vec![scalar(0), scalar(1)]).unwrap_err();
        assert!(err.to_string().contains("ε-centrality"), "{err}");
    }

    #[test]
    fn twisted_right_action_is_rejected() {
        // Right action of M_2 on itself through the transpose is not a right action.
        let m2 = FiniteAlgebra::matrix_algebra(Rationals, 2);
        let t = Arc::new(Triple::over_ground(m2.clone()));
        let transpose = [0usize, 2, 1, 3];
        let right = (0..4).map(|i| m2.right_regular(transpose[i])).collect();
        let left = (0..4).map(|i| m2.left_regular(i)).collect();
        let err = Bimodule::new(t, "twisted", 4, left, right).unwrap_err();
        assert!(matches!(err, Error::BimoduleAxiom(_)), "{err}");
    }
}
