use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, SparseVec};

/// Finite-dimensional unital associative algebra given by structure constants.
#[derive(Clone)]
pub struct FiniteAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    /// `mult[i * d + j]` holds the coordinates of `e_i e_j`.
    mult: Vec<SparseVec<F::Elem>>,
    unit: SparseVec<F::Elem>,
    commutative: bool,
}

impl<F: Field> fmt::Debug for FiniteAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("field", &self.field.descriptor())
            .field("labels", &self.labels)
            .finish()
    }
}

impl<F: Field> PartialEq for FiniteAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.mult == other.mult && self.unit == other.unit
    }
}

impl<F: Field> FiniteAlgebra<F> {
    /// Validates a structure-constant table: `table[i][j]` are the coordinates of `e_i e_j`.
    pub fn new(field: F, labels: Vec<String>, table: Vec<Vec<Vec<F::Elem>>>, unit: Vec<F::Elem>) -> Result<Self> {
        let d = table.len();
        if labels.len() != d {
            return Err(Error::Shape(format!("{} labels for an algebra of dimension {d}", labels.len())));
        }
        if unit.len() != d {
            return Err(Error::Shape(format!("unit has length {} (expected {d})", unit.len())));
        }
        let mut mult = Vec::with_capacity(d * d);
        for (i, row) in table.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Shape(format!("mult row {i} has {} entries (expected {d})", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != d {
                    return Err(Error::Shape(format!("mult[{i}][{j}] has length {} (expected {d})", v.len())));
                }
                mult.push(SparseVec::from_dense(v));
            }
        }
        Self::from_sparse(field, labels, mult, SparseVec::from_dense(&unit))
    }

    pub(crate) fn from_sparse(
        field: F,
        labels: Vec<String>,
        mult: Vec<SparseVec<F::Elem>>,
        unit: SparseVec<F::Elem>,
    ) -> Result<Self> {
        let d = labels.len();
        assert_eq!(mult.len(), d * d);
        let mut alg = FiniteAlgebra { field, labels, mult, unit, commutative: false };
        alg.check_associative()?;
        alg.check_unit()?;
        alg.commutative = (0..d).all(|i| (i + 1..d).all(|j| alg.mult[i * d + j] == alg.mult[j * d + i]));
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mult[i * d + j];
                for l in 0..d {
                    let left = self.mul_vec_basis(ij, l);
                    let right = self.mul_basis_vec(i, &self.mult[j * d + l]);
                    if left != right {
                        return Err(Error::NonAssociative { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let e = SparseVec::unit(i, self.field.one());
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<F::Elem> {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn basis(&self, i: usize) -> SparseVec<F::Elem> {
        SparseVec::unit(i, self.field.one())
    }

    /// Coordinates of `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.mult[i * self.dim() + j]
    }

    /// `x e_j`
    pub fn mul_vec_basis(&self, x: &SparseVec<F::Elem>, j: usize) -> SparseVec<F::Elem> {
        let mut out = SparseVec::new();
        for (k, c) in x.iter() {
            out.axpy(c, self.mul_basis(*k, j));
        }
        out
    }

    /// `e_i x`
    pub fn mul_basis_vec(&self, i: usize, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = SparseVec::new();
        for (k, c) in x.iter() {
            out.axpy(c, self.mul_basis(i, *k));
        }
        out
    }

    pub fn mul(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.axpy(&(a.clone() * b), self.mul_basis(*i, *j));
            }
        }
        out
    }

    /// Product of a list of basis elements, left to right; the unit for an empty list.
    pub fn product_of_basis(&self, factors: impl IntoIterator<Item = usize>) -> SparseVec<F::Elem> {
        let mut acc = self.unit.clone();
        for j in factors {
            acc = self.mul_vec_basis(&acc, j);
        }
        acc
    }

    pub fn to_dense(&self, x: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        x.to_dense(self.dim(), &self.field.zero())
    }

    /// Matrix of `x ↦ e_i x` in the basis.
    pub fn left_regular(&self, i: usize) -> DenseMatrix<F::Elem> {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(d, &self.field.zero());
        for c in 0..d {
            for (r, v) in self.mul_basis(i, c).iter() {
                *m.at_mut(*r, c) = v.clone();
            }
        }
        m
    }

    /// Matrix of `x ↦ x e_i` in the basis.
    pub fn right_regular(&self, i: usize) -> DenseMatrix<F::Elem> {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(d, &self.field.zero());
        for c in 0..d {
            for (r, v) in self.mul_basis(c, i).iter() {
                *m.at_mut(*r, c) = v.clone();
            }
        }
        m
    }

    /// Dense structure table, `table[i][j]` = coordinates of `e_i e_j`.
    pub fn table(&self) -> Vec<Vec<Vec<F::Elem>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.to_dense(self.mul_basis(i, j))).collect()).collect()
    }

    /// The field itself, basis `{1}`.
    pub fn ground(field: F) -> Self {
        let one = field.one();
        Self::from_sparse(field, vec!["1".into()], vec![SparseVec::unit(0, one.clone())], SparseVec::unit(0, one))
            .expect("ground field is an algebra")
    }

    /// `k[var]/(var^n)` with basis `1, var, …, var^{n-1}`.
    pub fn truncated_polynomial(field: F, var: &str, n: usize) -> Self {
        assert!(n >= 1, "truncation order must be positive");
        let one = field.one();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            })
            .collect();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(if i + j < n { SparseVec::unit(i + j, one.clone()) } else { SparseVec::new() });
            }
        }
        Self::from_sparse(field, labels, mult, SparseVec::unit(0, one)).expect("truncated polynomial algebra")
    }

    /// `k × k × …` (`copies` factors), basis the orthogonal idempotents.
    pub fn diagonal(field: F, copies: usize) -> Self {
        assert!(copies >= 1);
        let one = field.one();
        let labels = (1..=copies).map(|k| format!("p{k}")).collect();
        let mut mult = Vec::with_capacity(copies * copies);
        for i in 0..copies {
            for j in 0..copies {
                mult.push(if i == j { SparseVec::unit(i, one.clone()) } else { SparseVec::new() });
            }
        }
        let unit = SparseVec::from_pairs((0..copies).map(|i| (i, one.clone())).collect());
        Self::from_sparse(field, labels, mult, unit).expect("product of fields")
    }

    /// Full matrix algebra `M_k`, basis the matrix units `e_{rc}` in row-major order.
    pub fn matrix_algebra(field: F, k: usize) -> Self {
        assert!(k >= 1);
        let one = field.one();
        let idx = |r: usize, c: usize| r * k + c;
        let labels = (0..k * k).map(|t| format!("e{}{}", t / k + 1, t % k + 1)).collect();
        let mut mult = Vec::with_capacity(k.pow(4));
        for i in 0..k * k {
            for j in 0..k * k {
                let (r1, c1) = (i / k, i % k);
                let (r2, c2) = (j / k, j % k);
                mult.push(if c1 == r2 { SparseVec::unit(idx(r1, c2), one.clone()) } else { SparseVec::new() });
            }
        }
        let unit = SparseVec::from_pairs((0..k).map(|r| (idx(r, r), one.clone())).collect());
        Self::from_sparse(field, labels, mult, unit).expect("matrix algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn builders_validate() {
        assert_eq!(FiniteAlgebra::ground(Rationals).dim(), 1);
        let a = FiniteAlgebra::truncated_polynomial(Rationals, "x", 3);
        assert!(a.is_commutative());
        assert_eq!(a.mul_basis(1, 1), &SparseVec::unit(2, q(1)));
        assert!(a.mul_basis(1, 2).is_zero());
        let m2 = FiniteAlgebra::matrix_algebra(Rationals, 2);
        assert!(!m2.is_commutative());
        assert_eq!(m2.labels()[1], "e12");
        assert!(FiniteAlgebra::diagonal(Rationals, 2).is_commutative());
    }

    #[test]
    fn dual_numbers_from_table() {
        let table = vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(1)], vec![q(0), q(0)]]];
        let a = FiniteAlgebra::new(Rationals, vec!["1".into(), "x".into()], table, vec![q(1), q(0)]).unwrap();
        assert_eq!(a, FiniteAlgebra::truncated_polynomial(Rationals, "x", 2));
    }

    #[test]
    fn rejects_non_associative() {
        // x·x = y and x·y = 1, yet y·y = 0: (xx)y = 0 but x(xy) = x.
        let table = vec![
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]],
            vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)], vec![q(1), q(0), q(0)]],
            vec![vec![q(0), q(0), q(1)], vec![q(0), q(0), q(0)], vec![q(0), q(0), q(0)]],
        ];
        let labels = vec!["1".into(), "x".into(), "y".into()];
        let err = FiniteAlgebra::new(Rationals, labels, table, vec![q(1), q(0), q(0)]).unwrap_err();
        assert!(matches!(err, Error::NonAssociative { .. }), "{err}");
    }

    #[test]
    fn rejects_bad_unit() {
        let table = vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(1)], vec![q(0), q(0)]]];
        let err = FiniteAlgebra::new(Rationals, vec!["1".into(), "x".into()], table, vec![q(0), q(1)]).unwrap_err();
        assert_eq!(err, Error::UnitLaw(0));
    }

    #[test]
    fn regular_matrices() {
        let a = FiniteAlgebra::truncated_polynomial(Rationals, "x", 3);
        let l = a.left_regular(1);
        assert_eq!(l.apply(&[q(1), q(2), q(3)], &q(0)), vec![q(0), q(1), q(2)]);
    }
}
