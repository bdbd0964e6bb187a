//! Square-zero extensions of `A` by `M` and their classes in `H²`.

use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, LinearMap, Triple};
use crate::complex::expand::Slot;
use crate::complex::{Cochain, Complex, Flavor};
use crate::error::{Error, Result};
use crate::gerstenhaber::circle;
use crate::linalg::{Field, Scalar, SparseVec};

/// `X = A ⊕ M` (A-part first) with `ε_X: B → X` and the projection onto `A`.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    complex: Arc<Complex<F>>,
    x: Triple<F>,
    cocycle: Option<Cochain<F>>,
}

fn check_secondary<F: Field>(c: &Complex<F>) -> Result<()> {
    if c.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("extensions are classified by secondary cochains".into()));
    }
    Ok(())
}

/// `c(x ⊗ y ⊗ β)` for combinations `x, y ∈ A`, `β ∈ B`.
fn eval2<F: Field>(c: &Cochain<F>, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>, beta: &SparseVec<F::Elem>) -> Vec<F::Elem> {
    c.eval_slots(&[Slot::from_vec(x.clone()), Slot::from_vec(y.clone())], &[Slot::from_vec(beta.clone())])
}

fn concat<E: Clone>(a: Vec<E>, m: Vec<E>) -> Vec<E> {
    let mut out = a;
    out.extend(m);
    out
}

fn axpy_dense<E: Scalar>(out: &mut [E], c: &E, x: &[E]) {
    for (o, v) in out.iter_mut().zip(x) {
        o.add_mul(c, v);
    }
}

/// Builds `X` from a 2-cocycle `c`: `(a + m)(b + n) = ab + an + mb + c(a ⊗ b ⊗ 1)`,
/// `1_X = 1_A − c(1 ⊗ 1 ⊗ 1)`, `ε_X(α) = ε(α) − 2ε(α)c(1 ⊗ 1 ⊗ 1) + c(1 ⊗ 1 ⊗ α)`.
pub fn extension_from_cocycle<F: Field>(c: &Cochain<F>) -> Result<Extension<F>> {
    let complex = c.complex().clone();
    check_secondary(&complex)?;
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange(format!("extension cocycles have degree 2, got {}", c.degree())));
    }
    if !complex.is_cocycle(c)? {
        return Err(Error::NotCocycle);
    }
    let module = complex.module();
    let t = complex.triple();
    let (a, b) = (t.a(), t.b());
    let field = complex.field().clone();
    let (da, dm) = (a.dim(), module.dim());
    let zero = field.zero();
    let two = field.from_i64(2);
    let one_b = b.unit().clone();
    let c111 = eval2(c, a.unit(), a.unit(), &one_b);

    let mut table = vec![vec![vec![zero.clone(); da + dm]; da + dm]; da + dm];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = concat(a.to_dense(a.mul_basis(i, j)), eval2(c, &a.basis(i), &a.basis(j), &one_b));
        }
        for r in 0..dm {
            let e = SparseVec::unit(r, field.one()).to_dense(dm, &zero);
            table[i][da + r] = concat(vec![zero.clone(); da], module.act_left(&a.basis(i), &e));
            table[da + r][i] = concat(vec![zero.clone(); da], module.act_right(&e, &a.basis(i)));
        }
    }
    let unit = concat(a.to_dense(a.unit()), c111.iter().map(|v| -v.clone()).collect());
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend((0..dm).map(|r| format!("m{r}")));
    let x_alg = FiniteAlgebra::new(field.clone(), labels, table, unit)
        .map_err(|e| Error::Invariant(format!("twisted product of a cocycle failed validation: {e}")))?;

    let mut images = Vec::with_capacity(b.dim());
    for beta in 0..b.dim() {
        let eb = t.eps_basis(beta);
        let mut m = eval2(c, a.unit(), a.unit(), &b.basis(beta));
        axpy_dense(&mut m, &-two.clone(), &module.act_left(eb, &c111));
        images.push(concat(a.to_dense(eb), m));
    }
    let x = Triple::new(x_alg, b.clone(), images)
        .map_err(|e| Error::Invariant(format!("ε_X failed validation: {e}")))?;
    let ext = Extension { complex, x, cocycle: Some(c.clone()) };
    ext.validate()?;
    Ok(ext)
}

impl<F: Field> Extension<F> {
    /// An extension given directly by `X`, `B` and `ε_X`, with `X = A ⊕ M` in
    /// the coordinates of `complex`.
    pub fn new(complex: Arc<Complex<F>>, x: Triple<F>) -> Result<Self> {
        check_secondary(&complex)?;
        let ext = Extension { complex, x, cocycle: None };
        ext.validate()?;
        Ok(ext)
    }

    pub fn complex(&self) -> &Arc<Complex<F>> {
        &self.complex
    }

    /// `(X, B, ε_X)`
    pub fn triple(&self) -> &Triple<F> {
        &self.x
    }

    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        self.x.a()
    }

    pub fn dim_a(&self) -> usize {
        self.complex.triple().a().dim()
    }

    pub fn dim_m(&self) -> usize {
        self.complex.module().dim()
    }

    pub fn cocycle(&self) -> Option<&Cochain<F>> {
        self.cocycle.as_ref()
    }

    pub fn projection(&self) -> LinearMap<F> {
        let (da, dm) = (self.dim_a(), self.dim_m());
        let field = self.complex.field().clone();
        let images = (0..da + dm)
            .map(|i| (0..da).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        LinearMap::new(field, da, images).expect("shapes agree")
    }

    /// `a ↦ a + 0`
    pub fn canonical_section(&self) -> LinearMap<F> {
        let (da, dm) = (self.dim_a(), self.dim_m());
        let field = self.complex.field().clone();
        let images = (0..da)
            .map(|i| (0..da + dm).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        LinearMap::new(field, da + dm, images).expect("shapes agree")
    }

    /// `a ↦ a + g(a)` for a linear `g: A → M`.
    pub fn section_with(&self, g: &LinearMap<F>) -> Result<LinearMap<F>> {
        let (da, dm) = (self.dim_a(), self.dim_m());
        if g.source() != da || g.target() != dm {
            return Err(Error::Shape(format!("g must map A (dim {da}) to M (dim {dm})")));
        }
        let field = self.complex.field().clone();
        let images = (0..da)
            .map(|i| {
                let head = (0..da).map(|j| if i == j { field.one() } else { field.zero() }).collect();
                concat(head, g.image(i).to_vec())
            })
            .collect();
        LinearMap::new(field, da + dm, images)
    }

    fn p(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let da = self.dim_a();
        SparseVec::from_pairs(x.iter().filter(|(i, _)| *i < da).map(|(i, v)| (*i, v.clone())).collect())
    }

    /// Checks that `p` is a surjective algebra map with square-zero kernel `M`,
    /// `p ∘ ε_X = ε`, and, when built from a cocycle, that
    /// `m_{α,X}((a+m) ⊗ (b+n)) = ε(α)ab + ε(α)an + mbε(α) + c(a ⊗ b ⊗ α)` equals `ε_X(α)xy`.
    pub fn validate(&self) -> Result<()> {
        let t = self.complex.triple();
        let a = t.a();
        let x = self.x.a();
        let (da, dm) = (self.dim_a(), self.dim_m());
        let fail = |what: String| Err(Error::Invariant(format!("extension: {what}")));
        if x.dim() != da + dm {
            return fail(format!("dim X = {} but dim A + dim M = {}", x.dim(), da + dm));
        }
        if self.x.b() != t.b() {
            return fail("B differs from the base triple".into());
        }
        for i in 0..da + dm {
            for j in 0..da + dm {
                let prod = x.mul_basis(i, j);
                if i >= da && j >= da {
                    if !prod.is_zero() {
                        return fail(format!("(ker p)² ≠ 0 at ({i},{j})"));
                    }
                    continue;
                }
                let expected = if i < da && j < da { a.mul_basis(i, j).clone() } else { SparseVec::new() };
                if self.p(prod) != expected {
                    return fail(format!("p is not multiplicative at ({i},{j})"));
                }
            }
        }
        if self.p(x.unit()) != *a.unit() {
            return fail("p(1_X) ≠ 1_A".into());
        }
        for beta in 0..t.b().dim() {
            if self.p(self.x.eps_basis(beta)) != *t.eps_basis(beta) {
                return fail(format!("p ∘ ε_X ≠ ε at basis element {beta}"));
            }
        }
        if let Some(c) = &self.cocycle {
            let module = self.complex.module();
            for beta in 0..t.b().dim() {
                let eb = t.eps_basis(beta);
                let ex = self.x.eps_basis(beta);
                for i in 0..da + dm {
                    for j in 0..da + dm {
                        let want = x.mul(&x.mul_vec_basis(ex, i), &x.basis(j));
                        let mut got = vec![self.complex.field().zero(); da + dm];
                        if i < da && j < da {
                            let ab = a.mul(&a.mul_basis_vec(i, eb), &a.basis(j));
                            got[..da].clone_from_slice(&a.to_dense(&ab));
                            let cv = eval2(c, &a.basis(i), &a.basis(j), &t.b().basis(beta));
                            got[da..].clone_from_slice(&cv);
                        } else if i < da {
                            let e = SparseVec::unit(j - da, self.complex.field().one()).to_dense(dm, &self.complex.field().zero());
                            got[da..].clone_from_slice(&module.act_left(&a.mul(eb, &a.basis(i)), &e));
                        } else if j < da {
                            let e = SparseVec::unit(i - da, self.complex.field().one()).to_dense(dm, &self.complex.field().zero());
                            got[da..].clone_from_slice(&module.act_right(&e, &a.mul(&a.basis(j), eb)));
                        }
                        if SparseVec::from_dense(&got) != want {
                            return fail(format!("m_(α,X) ≠ ε_X(α)xy at α = {beta}, ({i},{j})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `c_s(a ⊗ b ⊗ α) = ε_X(α)s(a)s(b) − s(ε(α)ab)`, read in `M`.
pub fn cocycle_from_section<F: Field>(ext: &Extension<F>, s: &LinearMap<F>) -> Result<Cochain<F>> {
    let t = ext.complex.triple();
    let a = t.a();
    let x = ext.x.a();
    let (da, dm) = (ext.dim_a(), ext.dim_m());
    if s.source() != da || s.target() != da + dm {
        return Err(Error::Shape(format!("a section maps A (dim {da}) to X (dim {})", da + dm)));
    }
    for i in 0..da {
        let head: Vec<F::Elem> = s.image(i)[..da].to_vec();
        if SparseVec::from_dense(&head) != a.basis(i) {
            return Err(Error::Precondition(format!("p ∘ s ≠ id on basis element {i}")));
        }
    }
    let sx = |v: &SparseVec<F::Elem>| SparseVec::from_dense(&s.apply(v));
    let images: Vec<SparseVec<F::Elem>> = (0..da).map(|i| sx(&a.basis(i))).collect();
    let mut out = ext.complex.zero(2)?;
    let shape = ext.complex.shape(2);
    for i in 0..da {
        for j in 0..da {
            let prod = x.mul(&images[i], &images[j]);
            for beta in 0..t.b().dim() {
                let mut v = x.mul(ext.x.eps_basis(beta), &prod);
                let back = sx(&a.mul(&a.mul_basis_vec(i, t.eps_basis(beta)), &a.basis(j)));
                v.axpy(&-ext.complex.field().one(), &back);
                let dense = x.to_dense(&v);
                if dense[..da].iter().any(|e| !e.is_zero()) {
                    return Err(Error::Invariant("c_s leaves ker p".into()));
                }
                let off = shape.encode_parts(&[i, j], &[beta]);
                out.values_mut()[off * dm..(off + 1) * dm].clone_from_slice(&dense[da..]);
            }
        }
    }
    Ok(out)
}

/// Result of comparing two 2-cocycles.
#[derive(Clone, Debug)]
pub struct Equivalence<F: Field> {
    pub equivalent: bool,
    /// `f` with `c1 − c2 = δf`, when one exists.
    pub witness: Option<Cochain<F>>,
}

/// Decides whether `c1 − c2` is a coboundary. A witness `f` is checked to give
/// an isomorphism `F(a + m) = a + m + f(a)` from the extension of `c1` to that
/// of `c2` over `A`.
pub fn classes_equivalent<F: Field>(c1: &Cochain<F>, c2: &Cochain<F>) -> Result<Equivalence<F>> {
    let complex = c1.complex().clone();
    check_secondary(&complex)?;
    let diff = c1.sub(c2)?;
    if c1.degree() != 2 {
        return Err(Error::DegreeOutOfRange("extension classes live in degree 2".into()));
    }
    if !complex.is_cocycle(c1)? || !complex.is_cocycle(c2)? {
        return Err(Error::NotCocycle);
    }
    let Some(f) = complex.coboundary_preimage(&diff)? else {
        return Ok(Equivalence { equivalent: false, witness: None });
    };
    let e1 = extension_from_cocycle(c1)?;
    let e2 = extension_from_cocycle(c2)?;
    check_isomorphism(&e1, &e2, &f)?;
    Ok(Equivalence { equivalent: true, witness: Some(f) })
}

/// Verifies that `F(a + m) = a + m + f(a)` is a `B`-algebra map `X₁ → X₂` over `A`.
pub fn check_isomorphism<F: Field>(e1: &Extension<F>, e2: &Extension<F>, f: &Cochain<F>) -> Result<()> {
    let (da, dm) = (e1.dim_a(), e1.dim_m());
    let field = e1.complex.field().clone();
    let images: Vec<Vec<F::Elem>> = (0..da + dm)
        .map(|i| {
            let mut v = SparseVec::unit(i, field.one()).to_dense(da + dm, &field.zero());
            if i < da {
                for (o, x) in v[da..].iter_mut().zip(f.at(f.shape().encode_parts(&[i], &[]))) {
                    *o += x.clone();
                }
            }
            v
        })
        .collect();
    let map = LinearMap::new(field.clone(), da + dm, images)?;
    let apply = |x: &SparseVec<F::Elem>| SparseVec::from_dense(&map.apply(x));
    let (x1, x2) = (e1.x.a(), e2.x.a());
    let fail = |what: &str| Err(Error::Invariant(format!("F(a + m) = a + m + f(a) {what}")));
    for i in 0..da + dm {
        for j in 0..da + dm {
            let lhs = apply(x1.mul_basis(i, j));
            let rhs = x2.mul(&apply(&x1.basis(i)), &apply(&x1.basis(j)));
            if lhs != rhs {
                return fail("is not multiplicative");
            }
        }
    }
    if apply(x1.unit()) != *x2.unit() {
        return fail("is not unital");
    }
    for beta in 0..e1.x.b().dim() {
        if apply(e1.x.eps_basis(beta)) != *e2.x.eps_basis(beta) {
            return fail("does not intertwine ε_X");
        }
    }
    Ok(())
}

/// `c(a⊗b⊗α) = c(ε(α)⊗ab⊗1) + c(1⊗1⊗α)ab − 2ε(α)c(1⊗1⊗1)ab + ε(α)c(a⊗b⊗1)` on all basis tensors.
pub fn normalization_identity<F: Field>(c: &Cochain<F>) -> Result<bool> {
    let complex = c.complex();
    check_secondary(complex)?;
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange("the identity concerns 2-cochains".into()));
    }
    let module = complex.module();
    let t = complex.triple();
    let (a, b) = (t.a(), t.b());
    let field = complex.field();
    let one_b = b.unit().clone();
    let c111 = eval2(c, a.unit(), a.unit(), &one_b);
    let shape = c.shape();
    let two = field.from_i64(2);
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let ab = a.mul_basis(i, j).clone();
            let ab1 = eval2(c, &a.basis(i), &a.basis(j), &one_b);
            for beta in 0..b.dim() {
                let e = t.eps_basis(beta);
                let mut rhs = eval2(c, e, &ab, &one_b);
                axpy_dense(&mut rhs, &field.one(), &module.act_right(&eval2(c, a.unit(), a.unit(), &b.basis(beta)), &ab));
                axpy_dense(&mut rhs, &-two.clone(), &module.act_right(&module.act_left(e, &c111), &ab));
                axpy_dense(&mut rhs, &field.one(), &module.act_left(e, &ab1));
                if c.at(shape.encode_parts(&[i, j], &[beta])) != rhs.as_slice() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Obstruction<F: Field> {
    /// `c ∘ c`
    pub cochain: Cochain<F>,
    pub is_cocycle: bool,
    pub vanishes: bool,
    /// `x` with `δx = c ∘ c`, when the class vanishes.
    pub witness: Option<Cochain<F>>,
}

/// Class of `c ∘ c` in `H³((A, B, ε); A)`.
pub fn first_obstruction<F: Field>(c: &Cochain<F>) -> Result<Obstruction<F>> {
    let complex = c.complex();
    check_secondary(complex)?;
    if !complex.module().is_regular() {
        return Err(Error::CoefficientsMustBeA);
    }
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange("infinitesimal deformations are 2-cocycles".into()));
    }
    if !complex.is_cocycle(c)? {
        return Err(Error::NotCocycle);
    }
    let o = circle(c, c)?;
    let is_cocycle = complex.is_cocycle(&o)?;
    let witness = complex.coboundary_preimage(&o)?;
    Ok(Obstruction { cochain: o, is_cocycle, vanishes: witness.is_some(), witness })
}

/// `c₁∘cₙ + c₂∘c_{n−1} + … + cₙ∘c₁` for `cs = [c₁, …, cₙ]`.
pub fn obstruction_sum<F: Field>(cs: &[Cochain<F>]) -> Result<Cochain<F>> {
    let first = cs.first().ok_or_else(|| Error::Precondition("empty cochain list".into()))?;
    let complex = first.complex();
    let mut out = complex.zero(3)?;
    for (i, ci) in cs.iter().enumerate() {
        let cj = &cs[cs.len() - 1 - i];
        if ci.degree() != 2 || cj.degree() != 2 {
            return Err(Error::DegreeOutOfRange("obstruction sums take 2-cochains".into()));
        }
        out.axpy(&complex.field().one(), &circle(ci, cj)?)?;
    }
    Ok(out)
}
