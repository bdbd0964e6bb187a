//! Symmetric-group action on cochains, shuffle operators and the Hodge
//! decomposition for commutative `A` with symmetric coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Cochain, Complex, TensorIndex, TensorShape};
use crate::error::{Error, Result};
use crate::linalg::{rank, Field, Matrix, Scalar, SparseVec, Subspace};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    odd: bool,
}

impl Permutation {
    /// `images[i] = π(i)`, zero-based.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Shape(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        let mut odd = false;
        let mut visited = vec![false; n];
        for start in 0..n {
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = images[i];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                odd = !odd;
            }
        }
        Ok(Permutation { images, odd })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect(), odd: false }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("transposition ({i} {j}) in S_{n}")));
        }
        images.swap(i, j);
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn sign(&self) -> i64 {
        if self.odd {
            -1
        } else {
            1
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect(), odd: self.odd ^ other.odd }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images, odd: self.odd }
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation::new(current.clone()).expect("bijection"));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    current.push(x);
                    rec(n, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    /// Pure shuffles of `r` through `n − r`: increasing on `0..r` and on `r..n`.
    pub fn pure_shuffles(n: usize, r: usize) -> Vec<Permutation> {
        assert!(r <= n);
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(r);
        fn rec(n: usize, r: usize, from: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if chosen.len() == r {
                let mut images = chosen.clone();
                images.extend((0..n).filter(|x| !chosen.contains(x)));
                out.push(Permutation::new(images).expect("bijection"));
                return;
            }
            for x in from..n {
                chosen.push(x);
                rec(n, r, x + 1, chosen, out);
                chosen.pop();
            }
        }
        rec(n, r, 0, &mut chosen, &mut out);
        out
    }

    /// `T ↦ T′` with `T′` diagonal `a_{π(i)}` and entry `(r, c)` read from
    /// `(min, max)(π(r), π(c))` of `T`.
    pub fn permute_tensor(&self, t: &TensorIndex) -> TensorIndex {
        let n = self.len();
        let diag = self.images.iter().map(|&i| t.diag[i]).collect();
        let mut pairs = Vec::with_capacity(t.pairs.len());
        for r in 0..n {
            for c in r + 1..n {
                let (x, y) = (self.images[r], self.images[c]);
                pairs.push(t.b(x.min(y), x.max(y)));
            }
        }
        TensorIndex { diag, pairs }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// `λ_i = 2^i − 2`
pub fn lambda(i: usize) -> i64 {
    (1i64 << i) - 2
}

/// Signed pure shuffles making up `s_n`, with `r = 1..n−1`. Each shuffle `π`
/// acts through `π⁻¹` (the right action), the convention under which `s_n`
/// commutes with `δ`.
pub fn total_shuffle_terms(n: usize) -> Vec<(i64, Permutation)> {
    (1..n).flat_map(|r| Permutation::pure_shuffles(n, r)).map(|p| (p.sign(), p.inverse())).collect()
}

fn check_symmetric<F: Field>(f: &Cochain<F>) -> Result<()> {
    check_complex(f.complex())
}

fn check_complex<F: Field>(c: &Complex<F>) -> Result<()> {
    if !c.triple().a().is_commutative() {
        return Err(Error::Precondition("A not commutative".into()));
    }
    if !c.module().is_symmetric() {
        return Err(Error::Precondition("M not symmetric".into()));
    }
    Ok(())
}

/// Refuses prime fields in which some `λ_k − λ_i`, `1 ≤ i < k ≤ n`, vanishes.
pub fn check_field<F: Field>(field: &F, n: usize) -> Result<()> {
    let p = field.characteristic();
    if p == 0 || n < 2 {
        return Ok(());
    }
    let small = "denominator not invertible (prime field too small)";
    if (p as u128) <= (1u128 << n) - 2 {
        return Err(Error::Precondition(format!("{small}: need p > 2^{n} − 2")));
    }
    for k in 1..=n {
        for i in 1..k {
            if (lambda(k) - lambda(i)) as u64 % p == 0 {
                return Err(Error::Precondition(small.into()));
            }
        }
    }
    Ok(())
}

fn combine<F: Field>(f: &Cochain<F>, terms: &[(i64, Permutation)]) -> Result<Cochain<F>> {
    let c = f.complex();
    let n = f.degree();
    let dm = c.module().dim();
    let mut out = c.zero(n)?;
    if dm == 0 {
        return Ok(out);
    }
    let shape = c.shape(n);
    let coeffs: Vec<F::Elem> = terms.iter().map(|(s, _)| c.field().from_i64(*s)).collect();
    out.values_mut().par_chunks_mut(dm).enumerate().for_each(|(o, chunk)| {
        let t = shape.decode_unchecked(o);
        for ((_, p), s) in terms.iter().zip(&coeffs) {
            let src = p.permute_tensor(&t);
            for (x, v) in chunk.iter_mut().zip(f.at(shape.encode_parts(&src.diag, &src.pairs))) {
                x.add_mul(s, v);
            }
        }
    });
    Ok(out)
}

/// `(πf)(T) = f(T′)`; a left action: `σ(τf) = (στ)f`.
pub fn act<F: Field>(pi: &Permutation, f: &Cochain<F>) -> Result<Cochain<F>> {
    check_symmetric(f)?;
    if pi.len() != f.degree() {
        return Err(Error::Mismatch(format!("permutation of {} letters on a degree-{} cochain", pi.len(), f.degree())));
    }
    combine(f, &[(1, pi.clone())])
}

/// The right action `f·π = π⁻¹ f`.
pub fn act_right<F: Field>(f: &Cochain<F>, pi: &Permutation) -> Result<Cochain<F>> {
    act(&pi.inverse(), f)
}

/// `s_{r,n−r} f`
pub fn shuffle<F: Field>(r: usize, f: &Cochain<F>) -> Result<Cochain<F>> {
    check_symmetric(f)?;
    let n = f.degree();
    if r > n {
        return Err(Error::IndexOutOfRange(format!("s_{{{r},{}}} needs r ≤ n", n as i64 - r as i64)));
    }
    let terms: Vec<_> = Permutation::pure_shuffles(n, r).into_iter().map(|p| (p.sign(), p.inverse())).collect();
    combine(f, &terms)
}

/// `s_n f`
pub fn total_shuffle<F: Field>(f: &Cochain<F>) -> Result<Cochain<F>> {
    check_symmetric(f)?;
    combine(f, &total_shuffle_terms(f.degree()))
}

/// `∏_{i ∈ roots} (s_n − λ_i)` applied to `f`, one factor at a time.
fn shuffle_polynomial<F: Field>(f: &Cochain<F>, roots: impl IntoIterator<Item = usize>) -> Result<Cochain<F>> {
    let terms = total_shuffle_terms(f.degree());
    let field = f.complex().field().clone();
    let mut g = f.clone();
    for i in roots {
        let mut next = combine(&g, &terms)?;
        next.axpy(&field.from_i64(-lambda(i)), &g)?;
        g = next;
    }
    Ok(g)
}

/// `μ_n(s_n) f` with `μ_n(x) = ∏_{i=1..n} (x − λ_i)`.
pub fn minimal_polynomial_apply<F: Field>(f: &Cochain<F>) -> Result<Cochain<F>> {
    check_symmetric(f)?;
    shuffle_polynomial(f, 1..=f.degree())
}

/// `e_n(k) f`, with `e_0(0) = 1` and `e_n(k) = 0` outside `1 ≤ k ≤ n` for `n ≥ 1`.
pub fn idempotent_apply<F: Field>(k: usize, f: &Cochain<F>) -> Result<Cochain<F>> {
    check_symmetric(f)?;
    let n = f.degree();
    let field = f.complex().field().clone();
    check_field(&field, n)?;
    if n == 0 {
        return Ok(if k == 0 { f.clone() } else { f.complex().zero(0)? });
    }
    if k == 0 || k > n {
        return f.complex().zero(n);
    }
    let denom = (1..=n).filter(|&i| i != k).fold(field.one(), |acc, i| acc * field.from_i64(lambda(k) - lambda(i)));
    let inv = denom.inv().ok_or_else(|| Error::Precondition("denominator not invertible (prime field too small)".into()))?;
    Ok(shuffle_polynomial(f, (1..=n).filter(|&i| i != k))?.scaled(&inv))
}

/// Orbits of `S_n` on the basis tensors of degree `n`.
fn orbits(shape: &TensorShape) -> Vec<Vec<usize>> {
    let n = shape.degree;
    let count = shape.count();
    let gens: Vec<Permutation> = (0..n.saturating_sub(1)).map(|i| Permutation::transposition(n, i, i + 1).unwrap()).collect();
    let mut seen = vec![false; count];
    let mut out = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let t = shape.decode_unchecked(orbit[k]);
            for g in &gens {
                let u = g.permute_tensor(&t);
                let o = shape.encode_parts(&u.diag, &u.pairs);
                if !seen[o] {
                    seen[o] = true;
                    orbit.push(o);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Basis of `e_n(k) C^n`, assembled orbit by orbit.
pub fn component_basis<F: Field>(complex: &Arc<Complex<F>>, n: usize, k: usize) -> Result<Vec<SparseVec<F::Elem>>> {
    check_complex(complex)?;
    let field = complex.field().clone();
    check_field(&field, n)?;
    let dm = complex.module().dim();
    let total = complex.dim(n)?;
    if n == 0 {
        return Ok(if k == 0 { (0..total).map(|i| SparseVec::unit(i, field.one())).collect() } else { Vec::new() });
    }
    if k == 0 || k > n || dm == 0 {
        return Ok(Vec::new());
    }
    let shape = complex.shape(n);
    let terms = total_shuffle_terms(n);
    let denom = (1..=n).filter(|&i| i != k).fold(field.one(), |acc, i| acc * field.from_i64(lambda(k) - lambda(i)));
    let inv = denom.inv().ok_or_else(|| Error::Precondition("denominator not invertible (prime field too small)".into()))?;
    let blocks: Vec<Vec<SparseVec<F::Elem>>> = orbits(&shape)
        .into_par_iter()
        .map(|orbit| {
            let local: HashMap<usize, usize> = orbit.iter().enumerate().map(|(i, &o)| (o, i)).collect();
            let len = orbit.len();
            // Column j of `e` is e_n(k) applied to the j-th tensor of the orbit.
            let mut s = vec![vec![field.zero(); len]; len];
            for (row, &o) in orbit.iter().enumerate() {
                let t = shape.decode_unchecked(o);
                for (sign, p) in &terms {
                    let u = p.permute_tensor(&t);
                    let col = local[&shape.encode_parts(&u.diag, &u.pairs)];
                    s[row][col] += field.from_i64(*sign);
                }
            }
            let mut e: Vec<Vec<F::Elem>> =
                (0..len).map(|i| (0..len).map(|j| if i == j { inv.clone() } else { field.zero() }).collect()).collect();
            for i in (1..=n).filter(|&i| i != k) {
                let shift = field.from_i64(lambda(i));
                let mut next = vec![vec![field.zero(); len]; len];
                for r in 0..len {
                    for (m, srm) in s[r].iter().enumerate() {
                        if srm.is_zero() {
                            continue;
                        }
                        for c in 0..len {
                            next[r][c].add_mul(srm, &e[m][c]);
                        }
                    }
                    for c in 0..len {
                        let v = shift.clone() * e[r][c].clone();
                        next[r][c] -= v;
                    }
                }
                e = next;
            }
            let cols: Vec<Vec<F::Elem>> = (0..len).map(|c| (0..len).map(|r| e[r][c].clone()).collect()).collect();
            let span = Subspace::from_dense_spanning(field.clone(), len, &cols);
            let mut out = Vec::with_capacity(span.dim() * dm);
            for v in span.basis() {
                for r in 0..dm {
                    out.push(SparseVec::from_pairs(v.iter().map(|(j, x)| (orbit[*j] * dm + r, x.clone())).collect()));
                }
            }
            out
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeComponent {
    pub k: usize,
    pub dim: usize,
}

/// `dim H^{k,n−k}` from the complexes `e(k)C^{n−1} → e(k)C^n → e(k)C^{n+1}`.
/// Degree 0 has the single component `k = 0`.
pub fn hodge_decomposition<F: Field>(complex: &Arc<Complex<F>>, n: usize) -> Result<Vec<HodgeComponent>> {
    check_complex(complex)?;
    check_field(complex.field(), n + 1)?;
    let field = complex.field().clone();
    let ks: Vec<usize> = if n == 0 { vec![0] } else { (1..=n).collect() };
    let d_out = complex.differential_matrix(n)?;
    let d_in = if n == 0 { None } else { Some(complex.differential_matrix(n - 1)?) };
    let mut out = Vec::with_capacity(ks.len());
    for k in ks {
        let here = component_basis(complex, n, k)?;
        let dim_here = here.len();
        let image_rank = |d: &Matrix<F>, basis: Vec<SparseVec<F::Elem>>| -> Result<usize> {
            if basis.is_empty() {
                return Ok(0);
            }
            let y = Matrix::from_columns(field.clone(), d.ncols(), &basis);
            Ok(rank(&d.mul(&y)?))
        };
        let leaving = image_rank(&d_out, here)?;
        let entering = match &d_in {
            Some(d) => image_rank(d, component_basis(complex, n - 1, k)?)?,
            None => 0,
        };
        let dim = dim_here
            .checked_sub(leaving + entering)
            .ok_or_else(|| Error::Invariant(format!("Hodge component {k} in degree {n} has negative dimension")))?;
        out.push(HodgeComponent { k, dim });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::Flavor;
    use crate::linalg::{PrimeField, Rationals};
    use crate::random::{random_cochain, rng};

    fn complex(name: &str) -> Arc<Complex<Rationals>> {
        Complex::new(catalog::regular(catalog::by_name(Rationals, name).unwrap()), Flavor::Secondary)
    }

    #[test]
    fn permutations() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all.iter().filter(|p| p.is_odd()).count(), 3);
        for s in &all {
            assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        }
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(total_shuffle_terms(3).len(), 6);
        assert_eq!(total_shuffle_terms(4).len(), 14);
        assert_eq!([lambda(1), lambda(2), lambda(3)], [0, 2, 6]);
    }

    #[test]
    fn left_action_law() {
        let c = complex("T5");
        let f = random_cochain(&c, 3, &mut rng(3)).unwrap();
        let all = Permutation::all(3);
        for s in &all {
            let sf = act(s, &f).unwrap();
            assert_eq!(act_right(&sf, s).unwrap(), f);
            for t in &all {
                assert_eq!(act(s, &act(t, &f).unwrap()).unwrap(), act(&s.compose(t), &f).unwrap());
            }
        }
    }

    #[test]
    fn two_term_eigenvalues() {
        let c = complex("T5");
        let f = random_cochain(&c, 2, &mut rng(4)).unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let sym = f.add(&act(&swap, &f).unwrap()).unwrap();
        let anti = f.sub(&act(&swap, &f).unwrap()).unwrap();
        assert!(total_shuffle(&sym).unwrap().is_zero());
        assert_eq!(total_shuffle(&anti).unwrap(), anti.scaled(&Rational::from_integer(2)));
        assert_eq!(idempotent_apply(1, &sym).unwrap(), sym);
        assert!(idempotent_apply(2, &sym).unwrap().is_zero());
    }

    use crate::linalg::Rational;

    #[test]
    fn idempotents_and_commutation() {
        let c = complex("T5");
        let mut r = rng(9);
        for n in 1..=3 {
            let f = random_cochain(&c, n, &mut r).unwrap();
            assert!(minimal_polynomial_apply(&f).unwrap().is_zero());
            let mut total = c.zero(n).unwrap();
            for k in 1..=n {
                let e = idempotent_apply(k, &f).unwrap();
                assert_eq!(idempotent_apply(k, &e).unwrap(), e);
                total.axpy(&Rational::from_integer(1), &e).unwrap();
                let lhs = c.delta(&e).unwrap();
                let rhs = idempotent_apply(k, &c.delta(&f).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
            assert_eq!(total, f);
            assert_eq!(c.delta(&total_shuffle(&f).unwrap()).unwrap(), total_shuffle(&c.delta(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn decomposition_sums_to_cohomology() {
        for name in ["T2", "T3", "T5"] {
            let c = complex(name);
            for n in 0..=3 {
                let parts = hodge_decomposition(&c, n).unwrap();
                let sum: usize = parts.iter().map(|p| p.dim).sum();
                assert_eq!(sum, c.cohomology_dim(n).unwrap(), "{name} n={n} {parts:?}");
            }
        }
    }

    #[test]
    fn guards() {
        let m2 = complex("M2");
        assert!(matches!(hodge_decomposition(&m2, 1), Err(Error::Precondition(_))));
        let f3 = PrimeField::new(3).unwrap();
        let c = Complex::new(catalog::regular(catalog::t5(f3)), Flavor::Secondary);
        assert!(matches!(hodge_decomposition(&c, 2), Err(Error::Precondition(_))));
        assert!(check_field(&PrimeField::new(7).unwrap(), 3).is_ok());
        assert!(check_field(&PrimeField::new(5).unwrap(), 3).is_err());
    }
}
