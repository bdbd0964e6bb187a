//! Cup product, insertions `∘_i`, the circle product and the bracket on
//! `C^*((A,B,ε); A)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::expand::Slot;
use crate::algebra::Triple;
use crate::complex::{Cochain, Complex, Flavor, TensorIndex};
use crate::error::{Error, Result};
use crate::linalg::{Field, SparseVec};

fn check_pair<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<Arc<Complex<F>>> {
    let c = f.complex();
    if !c.module().is_regular() || !g.complex().module().is_regular() {
        return Err(Error::CoefficientsMustBeA);
    }
    if c.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("Gerstenhaber operations act on secondary cochains".into()));
    }
    if !c.same_as(g.complex()) {
        return Err(Error::Mismatch("cochains belong to different complexes".into()));
    }
    Ok(c.clone())
}

fn minus_one_pow<F: Field>(field: &F, odd: bool) -> F::Elem {
    if odd {
        -field.one()
    } else {
        field.one()
    }
}

/// `x · y · ε(∏ b_ij)` over the off-diagonal block of `tensor` split after slot `m`.
fn cup_point<F: Field>(t: &Triple<F>, tensor: &TensorIndex, m: usize, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let a = t.a();
    if x.is_zero() || y.is_zero() {
        return SparseVec::new();
    }
    let n = tensor.degree() - m;
    let rect = (0..m).flat_map(|i| (m..m + n).map(move |j| (i, j)));
    let beta = t.b().product_of_basis(rect.map(|(i, j)| tensor.b(i, j)));
    a.mul(&a.mul(x, y), &t.eps(&beta))
}

fn value_at<F: Field>(f: &Cochain<F>, t: &TensorIndex) -> SparseVec<F::Elem> {
    SparseVec::from_dense(f.at(f.shape().encode_parts(&t.diag, &t.pairs)))
}

/// `(f ⌣ g)(T) = f(T⁰_m) g(T^m_{m+n}) ∏ ε(b_{ij})`, the product over the off-diagonal block.
pub fn cup<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<Cochain<F>> {
    let c = check_pair(f, g)?;
    let (m, n) = (f.degree(), g.degree());
    let t = c.triple().clone();
    let d = t.a().dim();
    let mut out = c.zero(m + n)?;
    let shape = c.shape(m + n);
    out.values_mut().par_chunks_mut(d).enumerate().for_each(|(o, chunk)| {
        let tensor = shape.decode_unchecked(o);
        let fv = value_at(f, &tensor.block(0, m));
        if fv.is_zero() {
            return;
        }
        let value = cup_point(&t, &tensor, m, &fv, &value_at(g, &tensor.block(m, n)));
        chunk.clone_from_slice(&t.a().to_dense(&value));
    });
    Ok(out)
}

/// `((f ⌣ g) ⌣ h)(T)` and `(f ⌣ (g ⌣ h))(T)` at one basis tensor of degree
/// `m + n + p`, without building the intermediate cochains.
pub fn triple_cup_at<F: Field>(
    f: &Cochain<F>,
    g: &Cochain<F>,
    h: &Cochain<F>,
    tensor: &TensorIndex,
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let c = check_pair(f, g)?;
    check_pair(g, h)?;
    let (m, n, p) = (f.degree(), g.degree(), h.degree());
    if tensor.degree() != m + n + p {
        return Err(Error::Mismatch(format!("tensor of degree {} for a product of degree {}", tensor.degree(), m + n + p)));
    }
    let t = c.triple();
    let left = tensor.block(0, m + n);
    let fg = cup_point(t, &left, m, &value_at(f, &left.block(0, m)), &value_at(g, &left.block(m, n)));
    let lhs = cup_point(t, tensor, m + n, &fg, &value_at(h, &tensor.block(m + n, p)));
    let right = tensor.block(m, n + p);
    let gh = cup_point(t, &right, n, &value_at(g, &right.block(0, n)), &value_at(h, &right.block(n, p)));
    let rhs = cup_point(t, tensor, m, &value_at(f, &tensor.block(0, m)), &gh);
    Ok((t.a().to_dense(&lhs), t.a().to_dense(&rhs)))
}

/// Inserts `g` into diagonal slot `i` of `f`; degree `m + n − 1`.
pub fn comp_i<F: Field>(f: &Cochain<F>, g: &Cochain<F>, i: usize) -> Result<Cochain<F>> {
    let c = check_pair(f, g)?;
    let (m, n) = (f.degree(), g.degree());
    if i >= m {
        return Err(Error::IndexOutOfRange(format!("∘_{i} needs 0 ≤ i ≤ m − 1 with m = {m}")));
    }
    let t = c.triple().clone();
    let d = t.a().dim();
    let deg = m + n - 1;
    let mut out = c.zero(deg)?;
    let shape = c.shape(deg);
    let gs = g.shape();
    let block = |p: usize| -> std::ops::Range<usize> {
        match p {
            p if p < i => p..p + 1,
            p if p == i => i..i + n,
            p => p + n - 1..p + n,
        }
    };
    out.values_mut().par_chunks_mut(d).enumerate().for_each(|(o, chunk)| {
        let tensor = shape.decode_unchecked(o);
        let inner = tensor.block(i, n);
        let gv = SparseVec::from_dense(g.at(gs.encode_parts(&inner.diag, &inner.pairs)));
        if gv.is_zero() {
            return;
        }
        let diag: Vec<Slot<F::Elem>> = (0..m)
            .map(|p| if p == i { Slot::from_vec(gv.clone()) } else { Slot::Basis(tensor.diag[block(p).start]) })
            .collect();
        let mut pairs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for p in 0..m {
            for q in p + 1..m {
                if p != i && q != i {
                    pairs.push(Slot::Basis(tensor.b(block(p).start, block(q).start)));
                } else {
                    let rect = block(p).flat_map(|r| block(q).map(move |s| (r, s)));
                    pairs.push(Slot::from_vec(t.b().product_of_basis(rect.map(|(r, s)| tensor.b(r, s)))));
                }
            }
        }
        chunk.clone_from_slice(&f.eval_slots(&diag, &pairs));
    });
    Ok(out)
}

/// `f ∘ g = Σ_{i<m} (−1)^{(n−1)i} f ∘_i g`
pub fn circle<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<Cochain<F>> {
    let c = check_pair(f, g)?;
    let (m, n) = (f.degree(), g.degree());
    if m + n == 0 {
        return Err(Error::DegreeOutOfRange("f ∘ g of two 0-cochains would have degree −1".into()));
    }
    let mut out = c.zero(m + n - 1)?;
    for i in 0..m {
        let sign = minus_one_pow(c.field(), (n + 1) * i % 2 == 1);
        out.axpy(&sign, &comp_i(f, g, i)?)?;
    }
    Ok(out)
}

/// `[f, g] = f ∘ g − (−1)^{(m−1)(n−1)} g ∘ f`
pub fn bracket<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<Cochain<F>> {
    let c = check_pair(f, g)?;
    let (m, n) = (f.degree(), g.degree());
    let mut out = circle(f, g)?;
    let sign = minus_one_pow(c.field(), (m + 1) * (n + 1) % 2 == 0);
    out.axpy(&sign, &circle(g, f)?)?;
    Ok(out)
}

/// `π(a ⊗ b ⊗ α) = a b ε(α)`
pub fn pi_cochain<F: Field>(complex: &Arc<Complex<F>>) -> Result<Cochain<F>> {
    if complex.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("π is a secondary cochain".into()));
    }
    if !complex.module().is_regular() {
        return Err(Error::CoefficientsMustBeA);
    }
    let t = complex.triple();
    let a = t.a();
    let (da, db) = (a.dim(), t.b().dim());
    let mut out = complex.zero(2)?;
    let shape = complex.shape(2);
    for i in 0..da {
        for j in 0..da {
            for beta in 0..db {
                let v = a.mul(a.mul_basis(i, j), t.eps_basis(beta));
                let off = shape.encode_parts(&[i, j], &[beta]);
                out.values_mut()[off * da..(off + 1) * da].clone_from_slice(&a.to_dense(&v));
            }
        }
    }
    Ok(out)
}

/// Exact cochain-level identities of the Gerstenhaber structure. Each returns
/// `Ok(true)` when both sides agree.
pub mod identities {
    use super::*;

    fn sign<F: Field>(f: &Cochain<F>, odd: bool) -> F::Elem {
        minus_one_pow(f.complex().field(), odd)
    }

    /// `δ(f ⌣ g) = δf ⌣ g + (−1)^m f ⌣ δg`
    pub fn leibniz<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<bool> {
        let c = f.complex();
        let lhs = c.delta(&cup(f, g)?)?;
        let mut rhs = cup(&c.delta(f)?, g)?;
        rhs.axpy(&sign(f, f.degree() % 2 == 1), &cup(f, &c.delta(g)?)?)?;
        Ok(lhs == rhs)
    }

    pub fn cup_associative<F: Field>(f: &Cochain<F>, g: &Cochain<F>, h: &Cochain<F>) -> Result<bool> {
        Ok(cup(&cup(f, g)?, h)? == cup(f, &cup(g, h)?)?)
    }

    /// Associativity at the given basis tensors only, for products whose
    /// cochain space is too large to build.
    pub fn cup_associative_at<F: Field>(f: &Cochain<F>, g: &Cochain<F>, h: &Cochain<F>, tensors: &[TensorIndex]) -> Result<bool> {
        for t in tensors {
            let (lhs, rhs) = triple_cup_at(f, g, h, t)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f ⌣ g = (π ∘₀ f) ∘_m g`
    pub fn cup_via_insertions<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<bool> {
        let pi = pi_cochain(f.complex())?;
        Ok(cup(f, g)? == comp_i(&comp_i(&pi, f, 0)?, g, f.degree())?)
    }

    /// `δf = [f, −π] = (−1)^{m−1} [π, f]`
    pub fn delta_is_bracket_with_pi<F: Field>(f: &Cochain<F>) -> Result<bool> {
        let c = f.complex();
        let pi = pi_cochain(c)?;
        let d = c.delta(f)?;
        let first = bracket(f, &pi.neg())?;
        let second = bracket(&pi, f)?.scaled(&sign(f, f.degree() % 2 == 0));
        Ok(d == first && d == second)
    }

    /// `(f ∘_i g) ∘_j h = (f ∘_j h) ∘_{i+p−1} g` for `j < i`, `p = deg h`.
    pub fn pre_lie_first<F: Field>(f: &Cochain<F>, g: &Cochain<F>, h: &Cochain<F>, i: usize, j: usize) -> Result<bool> {
        let p = h.degree();
        let lhs = comp_i(&comp_i(f, g, i)?, h, j)?;
        let rhs = comp_i(&comp_i(f, h, j)?, g, i + p - 1)?;
        Ok(lhs == rhs)
    }

    /// `(f ∘_i g) ∘_j h = f ∘_i (g ∘_{j−i} h)` for `i ≤ j`.
    pub fn pre_lie_second<F: Field>(f: &Cochain<F>, g: &Cochain<F>, h: &Cochain<F>, i: usize, j: usize) -> Result<bool> {
        let lhs = comp_i(&comp_i(f, g, i)?, h, j)?;
        let rhs = comp_i(f, &comp_i(g, h, j - i)?, i)?;
        Ok(lhs == rhs)
    }

    /// `f ∘ δg − δ(f ∘ g) + (−1)^{n−1} δf ∘ g = (−1)^{n−1}(g ⌣ f − (−1)^{mn} f ⌣ g)`
    pub fn homotopy<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<bool> {
        let c = f.complex();
        let (m, n) = (f.degree(), g.degree());
        let s = sign(f, (n + 1) % 2 == 1);
        let mut lhs = circle(f, &c.delta(g)?)?;
        lhs.axpy(&-c.field().one(), &c.delta(&circle(f, g)?)?)?;
        lhs.axpy(&s, &circle(&c.delta(f)?, g)?)?;
        let mut rhs = cup(g, f)?;
        rhs.axpy(&-sign(f, m * n % 2 == 1), &cup(f, g)?)?;
        Ok(lhs == rhs.scaled(&s))
    }

    /// For cocycles `f`, `g`: `f ⌣ g − (−1)^{mn} g ⌣ f` is a coboundary.
    /// Returns the explicit preimage `±(f ∘ g)` check.
    pub fn graded_commutative_up_to_coboundary<F: Field>(f: &Cochain<F>, g: &Cochain<F>) -> Result<bool> {
        let c = f.complex();
        let (m, n) = (f.degree(), g.degree());
        let mut diff = cup(f, g)?;
        diff.axpy(&-sign(f, m * n % 2 == 1), &cup(g, f)?)?;
        if m + n == 0 {
            return Ok(diff.is_zero());
        }
        // From the homotopy formula with δf = δg = 0: δ(f ∘ g) = (−1)^{n−1}((−1)^{mn} f ⌣ g − g ⌣ f).
        let witness = c.delta(&circle(f, g)?)?;
        let mut expected = diff.scaled(&sign(f, (m * n + n + 1) % 2 == 1));
        expected.axpy(&-c.field().one(), &witness)?;
        Ok(expected.is_zero())
    }

    /// Graded Jacobi with `|f| = m − 1`:
    /// `(−1)^{|f||h|}[f,[g,h]] + (−1)^{|g||f|}[g,[h,f]] + (−1)^{|h||g|}[h,[f,g]] = 0`.
    pub fn jacobi<F: Field>(f: &Cochain<F>, g: &Cochain<F>, h: &Cochain<F>) -> Result<bool> {
        let (x, y, z) = (f.degree() + 1, g.degree() + 1, h.degree() + 1);
        let mut total = bracket(f, &bracket(g, h)?)?.scaled(&sign(f, x * z % 2 == 1));
        total.axpy(&sign(f, y * x % 2 == 1), &bracket(g, &bracket(h, f)?)?)?;
        total.axpy(&sign(f, z * y % 2 == 1), &bracket(h, &bracket(f, g)?)?)?;
        Ok(total.is_zero())
    }
}
