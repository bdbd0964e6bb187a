//! The differentials `δ^ε` and `δ`, applied to cochains or assembled as matrices.
//!
//! For every basis tensor `T` of degree `n + 1` the value `(δf)(T)` is a short
//! list of terms, each reading `f` at one degree-`n` basis tensor and acting on
//! the result by a scalar, by the left action of an element of `A`, or by the
//! right action. The same term lists drive both application and assembly.

use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Bimodule, FiniteAlgebra, Triple};
use crate::complex::cochain::{Cochain, Complex, Flavor};
use crate::complex::expand::{expand, Slot};
use crate::complex::tensor::{TensorIndex, TensorShape};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

#[derive(Clone, Debug)]
pub(crate) enum Action<E> {
    Scale(E),
    Left(SparseVec<E>),
    Right(SparseVec<E>),
}

#[derive(Clone, Debug)]
pub(crate) struct Term<E> {
    pub input: usize,
    pub action: Action<E>,
}

fn secondary_terms<F: Field>(triple: &Triple<F>, input: &TensorShape, t: &TensorIndex) -> Vec<Term<F::Elem>> {
    let n = input.degree;
    let (a, b) = (triple.a(), triple.b());
    let one = triple.field().one();
    let mut terms = Vec::with_capacity(n + 2);

    let head = b.product_of_basis((1..=n).map(|j| t.b(0, j)));
    let x = a.mul_basis_vec(t.diag[0], &triple.eps(&head));
    if !x.is_zero() {
        let inner = t.block(1, n);
        terms.push(Term { input: input.encode_parts(&inner.diag, &inner.pairs), action: Action::Left(x) });
    }

    for k in 0..n {
        let sign = if k % 2 == 0 { -one.clone() } else { one.clone() };
        let merged = triple.merged(t.b(k, k + 1), t.diag[k], t.diag[k + 1]);
        if merged.is_zero() {
            continue;
        }
        let block = |p: usize| -> Range<usize> {
            match p {
                p if p < k => p..p + 1,
                p if p == k => k..k + 2,
                p => p + 1..p + 2,
            }
        };
        let diag: Vec<Slot<F::Elem>> = (0..n)
            .map(|p| if p == k { Slot::from_vec(merged.clone()) } else { Slot::Basis(t.diag[block(p).start]) })
            .collect();
        let mut pairs = Vec::with_capacity(input.pair_count());
        for p in 0..n {
            for q in p + 1..n {
                if p != k && q != k {
                    pairs.push(Slot::Basis(t.b(block(p).start, block(q).start)));
                } else {
                    let rect = block(p).flat_map(|r| block(q).map(move |s| (r, s)));
                    pairs.push(Slot::from_vec(b.product_of_basis(rect.map(|(r, s)| t.b(r, s)))));
                }
            }
        }
        expand(input, &diag, &pairs, &sign, |off, c| terms.push(Term { input: off, action: Action::Scale(c) }));
    }

    let tail = b.product_of_basis((0..n).map(|i| t.b(i, n)));
    let mut x = a.mul_basis_vec(t.diag[n], &triple.eps(&tail));
    if n % 2 == 0 {
        x = x.neg();
    }
    if !x.is_zero() {
        let inner = t.block(0, n);
        terms.push(Term { input: input.encode_parts(&inner.diag, &inner.pairs), action: Action::Right(x) });
    }
    terms
}

/// Hochschild differential, written out directly on `A`-indices only.
fn ordinary_terms<F: Field>(a: &FiniteAlgebra<F>, diag: &[usize]) -> Vec<Term<F::Elem>> {
    let n = diag.len() - 1;
    let da = a.dim();
    let index = |xs: &[usize]| xs.iter().fold(0usize, |acc, &x| acc * da + x);
    let one = a.field().one();
    let mut terms = Vec::with_capacity(n + 2);
    terms.push(Term { input: index(&diag[1..]), action: Action::Left(a.basis(diag[0])) });
    let mut buf = Vec::with_capacity(n);
    for k in 0..n {
        let sign = if k % 2 == 0 { -one.clone() } else { one.clone() };
        for (j, c) in a.mul_basis(diag[k], diag[k + 1]).iter() {
            buf.clear();
            buf.extend_from_slice(&diag[..k]);
            buf.push(*j);
            buf.extend_from_slice(&diag[k + 2..]);
            terms.push(Term { input: index(&buf), action: Action::Scale(sign.clone() * c) });
        }
    }
    let last = if n % 2 == 0 { -one } else { one };
    terms.push(Term { input: index(&diag[..n]), action: Action::Right(a.basis(diag[n]).scaled(&last)) });
    terms
}

fn apply_terms<F: Field>(module: &Bimodule<F>, terms: &[Term<F::Elem>], f: &Cochain<F>, out: &mut [F::Elem]) {
    for term in terms {
        let v = f.at(term.input);
        match &term.action {
            Action::Scale(c) => {
                for (o, x) in out.iter_mut().zip(v) {
                    o.add_mul(c, x);
                }
            }
            Action::Left(x) => {
                for (o, y) in out.iter_mut().zip(module.act_left(x, v)) {
                    *o += y;
                }
            }
            Action::Right(x) => {
                for (o, y) in out.iter_mut().zip(module.act_right(v, x)) {
                    *o += y;
                }
            }
        }
    }
}

fn term_rows<F: Field>(module: &Bimodule<F>, terms: &[Term<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let dm = module.dim();
    let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); dm];
    for term in terms {
        let base = term.input * dm;
        match &term.action {
            Action::Scale(c) => {
                for (r, row) in rows.iter_mut().enumerate() {
                    row.push((base + r, c.clone()));
                }
            }
            Action::Left(x) | Action::Right(x) => {
                let act = match &term.action {
                    Action::Left(_) => module.left_action(x),
                    _ => module.right_action(x),
                };
                for (r, row) in rows.iter_mut().enumerate() {
                    for s in 0..dm {
                        let v = act.at(r, s);
                        if !v.is_zero() {
                            row.push((base + s, v.clone()));
                        }
                    }
                }
            }
        }
    }
    rows.into_iter().map(SparseVec::from_pairs).collect()
}

impl<F: Field> Complex<F> {
    /// Terms of `(δ_n f)(T)` for the degree-`(n+1)` basis tensor at `out_offset`.
    pub(crate) fn delta_terms(&self, n: usize, out_offset: usize) -> Vec<Term<F::Elem>> {
        let t = self.shape(n + 1).decode_unchecked(out_offset);
        match self.flavor() {
            Flavor::Secondary => secondary_terms(self.triple(), &self.shape(n), &t),
            Flavor::Ordinary => ordinary_terms(self.triple().a(), &t.diag),
        }
    }

    /// `δ_n f`.
    pub fn delta(self: &Arc<Self>, f: &Cochain<F>) -> Result<Cochain<F>> {
        if !f.complex().same_as(self) {
            return Err(Error::Mismatch("cochain belongs to a different complex".into()));
        }
        let n = f.degree();
        let mut out = self.zero(n + 1)?;
        let dm = self.module().dim();
        if dm == 0 {
            return Ok(out);
        }
        let module = self.module().clone();
        out.values_mut().par_chunks_mut(dm).enumerate().for_each(|(o, chunk)| {
            let terms = self.delta_terms(n, o);
            apply_terms(&module, &terms, f, chunk);
        });
        Ok(out)
    }

    /// Matrix of `δ_n: C^n → C^{n+1}` (rows index `C^{n+1}`).
    pub fn differential_matrix(&self, n: usize) -> Result<Matrix<F>> {
        let cols = self.dim(n)?;
        let rows = self.dim(n + 1)?;
        let count = self.shape(n + 1).count();
        let module = self.module();
        let blocks: Vec<Vec<SparseVec<F::Elem>>> = if module.dim() == 0 {
            Vec::new()
        } else {
            (0..count).into_par_iter().map(|o| term_rows(module, &self.delta_terms(n, o))).collect()
        };
        let all: Vec<SparseVec<F::Elem>> = blocks.into_iter().flatten().collect();
        debug_assert_eq!(all.len(), rows);
        Ok(Matrix::from_rows(self.field().clone(), cols, all))
    }
}

/// `δ^ε f` for a secondary cochain.
pub fn secondary_delta<F: Field>(f: &Cochain<F>) -> Result<Cochain<F>> {
    if f.complex().flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("secondary differential needs a secondary cochain".into()));
    }
    f.complex().delta(f)
}

/// Hochschild `δ f`. Secondary cochains are accepted when `B = k`, through the
/// identification of both complexes; the result stays in the caller's complex.
pub fn ordinary_delta<F: Field>(f: &Cochain<F>) -> Result<Cochain<F>> {
    let complex = f.complex();
    match complex.flavor() {
        Flavor::Ordinary => complex.delta(f),
        Flavor::Secondary => {
            if !complex.triple().has_ground_b() {
                return Err(Error::Mismatch("cochain depends on B; the ordinary differential needs B = k".into()));
            }
            let ordinary = complex.companion(Flavor::Ordinary);
            let g = f.clone().rehome(ordinary.clone());
            Ok(ordinary.delta(&g)?.rehome(complex.clone()))
        }
    }
}
