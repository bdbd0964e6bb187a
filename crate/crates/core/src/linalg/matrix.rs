use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::scalar::{Field, Scalar};
use crate::linalg::sparse::SparseVec;

/// Sparse matrix stored by rows. Zero entries are never stored.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} (nnz {})", self.nrows, self.ncols, self.nnz())?;
        if self.nrows * self.ncols <= 64 {
            for r in self.to_dense() {
                write!(f, "\n  [")?;
                for (k, v) in r.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let rows = (0..n).map(|i| SparseVec::unit(i, one.clone())).collect();
        Matrix { field, nrows: n, ncols: n, rows }
    }

    pub fn from_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < ncols)));
        Matrix { field, nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense(field: F, ncols: usize, dense: &[Vec<F::Elem>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(dense.len());
        for (i, r) in dense.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::Shape(format!("row {i} has length {} (expected {ncols})", r.len())));
            }
            rows.push(SparseVec::from_dense(r));
        }
        Ok(Matrix { field, nrows: dense.len(), ncols, rows })
    }

    /// Sums duplicate `(row, col)` entries.
    pub fn from_triplets(field: F, nrows: usize, ncols: usize, triplets: Vec<(usize, usize, F::Elem)>) -> Self {
        let mut buckets: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) outside {nrows}x{ncols}");
            buckets[r].push((c, v));
        }
        let rows = buckets.into_iter().map(SparseVec::from_pairs).collect();
        Matrix { field, nrows, ncols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, nrows: usize, columns: &[SparseVec<F::Elem>]) -> Self {
        Matrix::from_rows(field, nrows, columns.to_vec()).transpose()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec<F::Elem> {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<SparseVec<F::Elem>> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        self.rows[r].get(c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn fill_ratio(&self) -> f64 {
        if self.nrows == 0 || self.ncols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.nrows as f64 * self.ncols as f64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let zero = self.field.zero();
        self.rows.iter().map(|r| r.to_dense(self.ncols, &zero)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter() {
                cols[*c].push((r, v.clone()));
            }
        }
        let rows = cols.into_iter().map(SparseVec::from_sorted_unchecked).collect();
        Matrix { field: self.field.clone(), nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn columns(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.ncols, "vector length");
        let zero = self.field.zero();
        self.rows.iter().map(|r| r.dot_dense(x, &zero)).collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.ncols != other.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, v) in row.iter() {
                    acc.axpy(v, &other.rows[*k]);
                }
                acc
            })
            .collect();
        Ok(Matrix { field: self.field.clone(), nrows: self.nrows, ncols: other.ncols, rows })
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Shape("matrix shapes differ".into()));
        }
        let minus_one = -self.field.one();
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.axpy(&minus_one, b);
                r
            })
            .collect();
        Ok(Matrix { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols, rows })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.ncols != other.ncols {
            return Err(Error::Shape("column counts differ".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Matrix { field: self.field.clone(), nrows: rows.len(), ncols: self.ncols, rows })
    }
}

/// Dense square matrix used for bimodule actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    pub n: usize,
    pub data: Vec<E>,
}

impl<E: Scalar> DenseMatrix<E> {
    pub fn zeros(n: usize, zero: &E) -> Self {
        DenseMatrix { n, data: vec![zero.clone(); n * n] }
    }

    pub fn identity(n: usize, zero: &E, one: &E) -> Self {
        let mut m = Self::zeros(n, zero);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(DenseMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.n + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut E {
        &mut self.data[r * self.n + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn apply(&self, x: &[E], zero: &E) -> Vec<E> {
        let n = self.n;
        let mut out = vec![zero.clone(); n];
        for (r, o) in out.iter_mut().enumerate() {
            for c in 0..n {
                o.add_mul(&self.data[r * n + c], &x[c]);
            }
        }
        out
    }

    /// `out += self * x`
    pub fn apply_add(&self, x: &[E], out: &mut [E]) {
        let n = self.n;
        for c in 0..n {
            if x[c].is_zero() {
                continue;
            }
            for r in 0..n {
                out[r].add_mul(&self.data[r * n + c], &x[c]);
            }
        }
    }

    pub fn mul(&self, other: &Self, zero: &E) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, zero);
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c].add_mul(a, &other.data[k * n + c]);
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &E, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul(c, b);
        }
    }
}
