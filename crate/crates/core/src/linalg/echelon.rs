//! Exact elimination: rank, nullspace, solving, and subspace arithmetic.
//!
//! Elimination is sparse by default. Rows are inserted shortest first and
//! reduced against the pivots found so far. Matrices whose fill exceeds
//! [`DENSE_FILL_THRESHOLD`] are handed to the field's dense echelon routine
//! instead (fraction-free Bareiss over the rationals, plain Gaussian
//! elimination over prime fields).

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::{Field, Scalar};
use crate::linalg::sparse::SparseVec;

pub const DENSE_FILL_THRESHOLD: f64 = 0.25;

/// Rows with normalized (unit) leading entries at distinct pivot columns.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    /// Echelon form of the row space spanned by `rows`.
    pub fn from_rows(field: F, ncols: usize, mut rows: Vec<SparseVec<F::Elem>>) -> Self {
        rows.retain(|r| !r.is_zero());
        let nnz: usize = rows.iter().map(SparseVec::nnz).sum();
        let cells = rows.len() as f64 * ncols as f64;
        if !rows.is_empty() && nnz as f64 > DENSE_FILL_THRESHOLD * cells && cells <= 4.0e7 {
            return Self::from_dense_rows(field, ncols, rows);
        }
        rows.sort_by_key(SparseVec::nnz);
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            if e.rank() == ncols {
                break;
            }
            e.insert(r);
        }
        e
    }

    fn from_dense_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        let zero = field.zero();
        let dense = rows.iter().map(|r| r.to_dense(ncols, &zero)).collect();
        let echelon = field.dense_echelon(dense, ncols);
        let mut e = Echelon::new(field, ncols);
        for (pivot, row) in echelon {
            let mut v = SparseVec::from_dense(&row);
            let lead = v.leading().expect("nonzero echelon row").1.clone();
            debug_assert_eq!(v.leading().unwrap().0, pivot);
            v.scale(&lead.inv().expect("nonzero pivot"));
            e.push_normalized(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn push_normalized(&mut self, v: SparseVec<F::Elem>) {
        let lead = v.leading().expect("nonzero").0;
        debug_assert!(self.pivot_row[lead].is_none());
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(v);
    }

    /// Removes every pivot-column entry from `v`. The result is the unique
    /// representative of `v + rowspace` vanishing on all pivot columns.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut floor = 0usize;
        loop {
            let hit = v
                .entries()
                .iter()
                .find(|(c, _)| *c >= floor && self.pivot_row[*c].is_some())
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = hit else {
                return v;
            };
            let r = self.pivot_row[c].unwrap();
            v.axpy(&-coef, &self.rows[r]);
            floor = c + 1;
        }
    }

    /// Adds `v` to the span. Returns true if the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let mut v = self.reduce(v);
        let Some((_, lead)) = v.leading().cloned() else {
            return false;
        };
        v.scale(&lead.inv().expect("nonzero leading entry"));
        self.push_normalized(v);
        true
    }

    /// Reduced row echelon form: rows sorted by pivot, every pivot column a unit column.
    pub fn into_rref(mut self) -> (Vec<usize>, Vec<SparseVec<F::Elem>>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading().unwrap().0);
        // Clear each pivot column from the other rows, largest pivot first.
        for &r in order.iter().rev() {
            let p = self.rows[r].leading().unwrap().0;
            let pivot_row = self.rows[r].clone();
            for &s in order.iter() {
                if s == r {
                    continue;
                }
                if self.rows[s].leading().unwrap().0 >= p {
                    continue;
                }
                if let Some(c) = self.rows[s].get(p).cloned() {
                    self.rows[s].axpy(&-c, &pivot_row);
                }
            }
        }
        let pivots = order.iter().map(|&r| self.rows[r].leading().unwrap().0).collect();
        let mut rows: Vec<Option<SparseVec<F::Elem>>> = self.rows.into_iter().map(Some).collect();
        let sorted = order.iter().map(|&r| rows[r].take().unwrap()).collect();
        let _ = (&self.field, self.ncols);
        (pivots, sorted)
    }
}

/// A linear subspace of `field^ambient`, held as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        // RREF bases are canonical.
        self.ambient == other.ambient && self.pivots == other.pivots && self.basis == other.basis
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, pivots: Vec::new(), basis: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let one = field.one();
        let basis = (0..ambient).map(|i| SparseVec::unit(i, one.clone())).collect();
        Subspace { field, ambient, pivots: (0..ambient).collect(), basis }
    }

    pub fn from_spanning(field: F, ambient: usize, vectors: Vec<SparseVec<F::Elem>>) -> Self {
        let e = Echelon::from_rows(field.clone(), ambient, vectors);
        let (pivots, basis) = e.into_rref();
        Subspace { field, ambient, pivots, basis }
    }

    pub fn from_dense_spanning(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let sparse = vectors.iter().map(|v| SparseVec::from_dense(v)).collect();
        Self::from_spanning(field, ambient, sparse)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    pub fn dense_basis(&self) -> Vec<Vec<F::Elem>> {
        let zero = self.field.zero();
        self.basis.iter().map(|b| b.to_dense(self.ambient, &zero)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.field.clone(), self.ambient);
        for b in &self.basis {
            e.push_normalized(b.clone());
        }
        e
    }

    /// Normal form of `v` modulo this subspace: zero on every pivot column.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut v = v;
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            if let Some(c) = v.get(*p).cloned() {
                v.axpy(&-c, b);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn contains_dense(&self, v: &[F::Elem]) -> bool {
        self.contains(&SparseVec::from_dense(v))
    }

    /// Coefficients of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        let zero = self.field.zero();
        Some(self.pivots.iter().map(|p| v.get(*p).cloned().unwrap_or_else(|| zero.clone())).collect())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("ambient dimensions differ".into()));
        }
        let mut e = self.echelon();
        for b in &other.basis {
            e.insert(b.clone());
        }
        let (pivots, basis) = e.into_rref();
        Ok(Subspace { field: self.field.clone(), ambient: self.ambient, pivots, basis })
    }

    /// Index of the first basis vector of `self` outside `other`, if any.
    pub fn first_outside(&self, other: &Subspace<F>) -> Option<usize> {
        self.basis.iter().position(|b| !other.contains(b))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.first_outside(other).is_none()
    }

    /// Canonical basis of a complement of `sub` inside `self`: the RREF of the
    /// normal forms of `self` modulo `sub`.
    pub fn complement_basis(&self, sub: &Subspace<F>) -> Vec<SparseVec<F::Elem>> {
        let residues = self.basis.iter().map(|b| sub.reduce(b.clone())).collect();
        Subspace::from_spanning(self.field.clone(), self.ambient, residues).basis
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    // Eliminate along the shorter side.
    if m.nrows() > m.ncols() {
        Echelon::from_rows(m.field().clone(), m.nrows(), m.columns()).rank()
    } else {
        Echelon::from_rows(m.field().clone(), m.ncols(), m.rows().to_vec()).rank()
    }
}

/// `{ v : m v = 0 }`
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let field = m.field().clone();
    let n = m.ncols();
    let (pivots, rows) = Echelon::from_rows(field.clone(), n, m.rows().to_vec()).into_rref();
    let mut is_pivot = vec![false; n];
    for p in &pivots {
        is_pivot[*p] = true;
    }
    let one = field.one();
    let vectors = (0..n)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut pairs = vec![(free, one.clone())];
            for (p, row) in pivots.iter().zip(&rows) {
                if let Some(x) = row.get(free) {
                    pairs.push((*p, -x.clone()));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Subspace::from_spanning(field, n, vectors)
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the column space.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(b.len(), m.nrows(), "right-hand side length");
    let field = m.field().clone();
    let n = m.ncols();
    let rows: Vec<SparseVec<F::Elem>> = m
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut entries = r.entries().to_vec();
            if !bi.is_zero() {
                entries.push((n, bi.clone()));
            }
            SparseVec::from_sorted_unchecked(entries)
        })
        .collect();
    let (pivots, rows) = Echelon::from_rows(field.clone(), n + 1, rows).into_rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (p, row) in pivots.iter().zip(&rows) {
        if let Some(v) = row.get(n) {
            x[*p] = v.clone();
        }
    }
    Some(x)
}

/// `dim(total) - dim(sub)`, after checking `sub ⊆ total`.
pub fn quotient_dim<F: Field>(total: &Subspace<F>, sub: &Subspace<F>) -> Result<usize> {
    if total.ambient() != sub.ambient() {
        return Err(Error::Shape("ambient dimensions differ".into()));
    }
    if let Some(i) = sub.first_outside(total) {
        return Err(Error::NotSubspace(i));
    }
    Ok(total.dim() - sub.dim())
}

/// Column space of `m` as a subspace of `field^{nrows}`.
pub fn column_space<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::from_spanning(m.field().clone(), m.nrows(), m.columns())
}
