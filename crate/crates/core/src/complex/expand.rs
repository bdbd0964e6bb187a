//! Multilinear expansion of tensors whose entries are linear combinations.

use crate::complex::cochain::Cochain;
use crate::complex::tensor::TensorShape;
use crate::linalg::{Field, Scalar, SparseVec};

/// One entry of a tensor matrix: a basis index or a linear combination of them.
#[derive(Clone, Debug)]
pub(crate) enum Slot<E> {
    Basis(usize),
    Combo(SparseVec<E>),
}

impl<E: Scalar> Slot<E> {
    fn len(&self) -> usize {
        match self {
            Slot::Basis(_) => 1,
            Slot::Combo(v) => v.nnz(),
        }
    }

    /// Collapses single-term combinations with unit coefficient.
    pub fn from_vec(v: SparseVec<E>) -> Self {
        if v.nnz() == 1 && v.entries()[0].1.is_one() {
            Slot::Basis(v.entries()[0].0)
        } else {
            Slot::Combo(v)
        }
    }
}

/// Calls `emit(offset, coefficient)` for every basis tensor in the expansion of
/// `coef · (diag ⊗ pairs)`.
pub(crate) fn expand<E: Scalar>(
    shape: &TensorShape,
    diag: &[Slot<E>],
    pairs: &[Slot<E>],
    coef: &E,
    mut emit: impl FnMut(usize, E),
) {
    debug_assert_eq!(diag.len(), shape.degree);
    debug_assert_eq!(pairs.len(), shape.pair_count());
    if coef.is_zero() || diag.iter().chain(pairs).any(|s| s.len() == 0) {
        return;
    }
    let nd = diag.len();
    let slots: Vec<&Slot<E>> = diag.iter().chain(pairs).collect();
    let mut pos = vec![0usize; slots.len()];
    loop {
        let mut c = coef.clone();
        let mut off = 0usize;
        for (k, s) in slots.iter().enumerate() {
            let radix = if k < nd { shape.dim_a } else { shape.dim_b };
            let d = match s {
                Slot::Basis(i) => *i,
                Slot::Combo(v) => {
                    let (i, x) = &v.entries()[pos[k]];
                    c *= x;
                    *i
                }
            };
            off = off * radix + d;
        }
        emit(off, c);
        let mut k = slots.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < slots[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

impl<F: Field> Cochain<F> {
    /// Value of the cochain on a tensor with combination entries, expanded multilinearly.
    pub(crate) fn eval_slots(&self, diag: &[Slot<F::Elem>], pairs: &[Slot<F::Elem>]) -> Vec<F::Elem> {
        let dm = self.module().dim();
        let field = self.complex().field();
        let mut out = vec![field.zero(); dm];
        let shape = self.shape();
        expand(&shape, diag, pairs, &field.one(), |off, c| {
            for (o, v) in out.iter_mut().zip(self.at(off)) {
                o.add_mul(&c, v);
            }
        });
        out
    }
}
