use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Field, Matrix, Scalar, SparseVec, Subspace};

/// Linear map between coordinate spaces, stored by images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<F: Field> {
    field: F,
    source: usize,
    target: usize,
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(field: F, target: usize, images: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(j) = images.iter().position(|v| v.len() != target) {
            return Err(Error::Shape(format!("image {j} has length {} (expected {target})", images[j].len())));
        }
        Ok(LinearMap { field, source: images.len(), target, images })
    }

    pub fn zero(field: F, source: usize, target: usize) -> Self {
        let z = field.zero();
        LinearMap { field, source, target, images: vec![vec![z; target]; source] }
    }

    /// Inverse of [`LinearMap::to_coords`].
    pub fn from_coords(field: F, source: usize, target: usize, coords: &[F::Elem]) -> Self {
        assert_eq!(coords.len(), source * target, "coordinate vector length");
        let images = if target == 0 { vec![Vec::new(); source] } else { coords.chunks(target).map(<[_]>::to_vec).collect() };
        LinearMap { field, source, target, images }
    }

    pub fn from_sparse_coords(field: F, source: usize, target: usize, coords: &SparseVec<F::Elem>) -> Self {
        let dense = coords.to_dense(source * target, &field.zero());
        Self::from_coords(field, source, target, &dense)
    }

    /// Coordinates `j * target + r` = component `r` of the image of basis vector `j`.
    pub fn to_coords(&self) -> Vec<F::Elem> {
        self.images.iter().flatten().cloned().collect()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self, j: usize) -> &[F::Elem] {
        &self.images[j]
    }

    pub fn apply(&self, x: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.target];
        for (j, c) in x.iter() {
            for (o, v) in out.iter_mut().zip(&self.images[*j]) {
                o.add_mul(c, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().flatten().all(Scalar::is_zero)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("linear map shapes differ".into()));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() - y).collect())
            .collect();
        Ok(LinearMap { field: self.field.clone(), source: self.source, target: self.target, images })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    /// `Der_k(A, M)`
    All,
    /// Derivations vanishing on `ε(B)`.
    BLinear,
    /// `a ↦ am − ma`
    Inner,
    /// `Der_k(B, M)`, with `B` acting through `ε`.
    OnB,
}

/// `M^A = { m : am = ma for all a }`
pub fn invariant_submodule<F: Field>(module: &Bimodule<F>) -> Subspace<F> {
    let field = module.field().clone();
    let dm = module.dim();
    let mut triplets = Vec::new();
    for i in 0..module.triple().a().dim() {
        let (l, r) = (module.left(i), module.right(i));
        for row in 0..dm {
            for col in 0..dm {
                let v = l.at(row, col).clone() - r.at(row, col);
                if !v.is_zero() {
                    triplets.push((i * dm + row, col, v));
                }
            }
        }
    }
    let m = Matrix::from_triplets(field, module.triple().a().dim() * dm, dm, triplets);
    nullspace(&m)
}

/// Leibniz constraints `d(e_i e_j) − e_i d(e_j) − d(e_i) e_j` on maps `A → M`.
fn leibniz_rows<F: Field>(module: &Bimodule<F>) -> Vec<(usize, usize, F::Elem)> {
    let a = module.triple().a();
    let (da, dm) = (a.dim(), module.dim());
    let mut triplets = Vec::new();
    for i in 0..da {
        for j in 0..da {
            let row0 = (i * da + j) * dm;
            for (k, c) in a.mul_basis(i, j).iter() {
                for r in 0..dm {
                    triplets.push((row0 + r, k * dm + r, c.clone()));
                }
            }
            let (l, rt) = (module.left(i), module.right(j));
            for r in 0..dm {
                for s in 0..dm {
                    let x = l.at(r, s);
                    if !x.is_zero() {
                        triplets.push((row0 + r, j * dm + s, -x.clone()));
                    }
                    let y = rt.at(r, s);
                    if !y.is_zero() {
                        triplets.push((row0 + r, i * dm + s, -y.clone()));
                    }
                }
            }
        }
    }
    triplets
}

/// Leibniz constraints for maps `B → M`, with `b·m = ε(b)m` and `m·b = mε(b)`.
fn leibniz_rows_on_b<F: Field>(module: &Bimodule<F>) -> Vec<(usize, usize, F::Elem)> {
    let t = module.triple();
    let b = t.b();
    let (db, dm) = (b.dim(), module.dim());
    let mut triplets = Vec::new();
    for i in 0..db {
        for j in 0..db {
            let row0 = (i * db + j) * dm;
            for (k, c) in b.mul_basis(i, j).iter() {
                for r in 0..dm {
                    triplets.push((row0 + r, k * dm + r, c.clone()));
                }
            }
            let l = module.left_action(t.eps_basis(i));
            let rt = module.right_action(t.eps_basis(j));
            for r in 0..dm {
                for s in 0..dm {
                    let x = l.at(r, s);
                    if !x.is_zero() {
                        triplets.push((row0 + r, j * dm + s, -x.clone()));
                    }
                    let y = rt.at(r, s);
                    if !y.is_zero() {
                        triplets.push((row0 + r, i * dm + s, -y.clone()));
                    }
                }
            }
        }
    }
    triplets
}

/// Derivation spaces as subspaces of `LinearMap` coordinates (see [`LinearMap::to_coords`]).
pub fn derivation_space<F: Field>(module: &Bimodule<F>, kind: DerivationKind) -> Subspace<F> {
    let field = module.field().clone();
    let t = module.triple();
    let (da, db, dm) = (t.a().dim(), t.b().dim(), module.dim());
    match kind {
        DerivationKind::All => {
            let m = Matrix::from_triplets(field, da * da * dm, da * dm, leibniz_rows(module));
            nullspace(&m)
        }
        DerivationKind::BLinear => {
            let mut triplets = leibniz_rows(module);
            let base = da * da * dm;
            for beta in 0..db {
                for (k, c) in t.eps_basis(beta).iter() {
                    for r in 0..dm {
                        triplets.push((base + beta * dm + r, k * dm + r, c.clone()));
                    }
                }
            }
            let m = Matrix::from_triplets(field, base + db * dm, da * dm, triplets);
            nullspace(&m)
        }
        DerivationKind::Inner => {
            let vectors = (0..dm)
                .map(|s| {
                    let mut pairs = Vec::new();
                    for j in 0..da {
                        for r in 0..dm {
                            let v = module.left(j).at(r, s).clone() - module.right(j).at(r, s);
                            pairs.push((j * dm + r, v));
                        }
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect();
            Subspace::from_spanning(field, da * dm, vectors)
        }
        DerivationKind::OnB => {
            let m = Matrix::from_triplets(field, db * db * dm, db * dm, leibniz_rows_on_b(module));
            nullspace(&m)
        }
    }
}

pub fn is_derivation<F: Field>(module: &Bimodule<F>, w: &LinearMap<F>) -> bool {
    let t = module.triple();
    let (da, dm) = (t.a().dim(), module.dim());
    if w.source() != da || w.target() != dm {
        return false;
    }
    let m = Matrix::from_triplets(module.field().clone(), da * da * dm, da * dm, leibniz_rows(module));
    m.mul_vec(&w.to_coords()).iter().all(Scalar::is_zero)
}

/// `w ∘ ε` for a derivation `w: A → M`.
pub fn pullback_derivation<F: Field>(module: &Bimodule<F>, w: &LinearMap<F>) -> Result<LinearMap<F>> {
    if !is_derivation(module, w) {
        return Err(Error::NotDerivation(String::new()));
    }
    Ok(pullback_linear(module, w))
}

fn pullback_linear<F: Field>(module: &Bimodule<F>, w: &LinearMap<F>) -> LinearMap<F> {
    let t = module.triple();
    let images = (0..t.b().dim()).map(|beta| w.apply(t.eps_basis(beta))).collect();
    LinearMap::new(module.field().clone(), module.dim(), images).expect("shapes agree")
}

/// `ε*(Der_k(A, M))` inside `Der_k(B, M)`.
pub fn pullback_space<F: Field>(module: &Bimodule<F>) -> Subspace<F> {
    let t = module.triple();
    let (da, db, dm) = (t.a().dim(), t.b().dim(), module.dim());
    let field = module.field().clone();
    let ders = derivation_space(module, DerivationKind::All);
    let vectors = ders
        .basis()
        .iter()
        .map(|v| {
            let w = LinearMap::from_sparse_coords(field.clone(), da, dm, v);
            SparseVec::from_dense(&pullback_linear(module, &w).to_coords())
        })
        .collect();
    Subspace::from_spanning(field, db * dm, vectors)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{FiniteAlgebra, Triple};
    use crate::linalg::{quotient_dim, Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn t5() -> Arc<Triple<Rationals>> {
        let a = FiniteAlgebra::truncated_polynomial(Rationals, "x", 3);
        let b = FiniteAlgebra::truncated_polynomial(Rationals, "y", 2);
        Arc::new(Triple::new(a, b, vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]]).unwrap())
    }

    #[test]
    fn dual_numbers_over_ground() {
        let a = FiniteAlgebra::truncated_polynomial(Rationals, "x", 2);
        let m = Bimodule::regular(Arc::new(Triple::over_ground(a)));
        assert_eq!(derivation_space(&m, DerivationKind::All).dim(), 1);
        assert_eq!(derivation_space(&m, DerivationKind::Inner).dim(), 0);
        assert_eq!(invariant_submodule(&m).dim(), 2);
    }

    #[test]
    fn identity_triple_has_no_b_linear_derivations() {
        let a = FiniteAlgebra::truncated_polynomial(Rationals, "x", 2);
        let m = Bimodule::regular(Arc::new(Triple::identity(a).unwrap()));
        assert_eq!(derivation_space(&m, DerivationKind::BLinear).dim(), 0);
        let w = LinearMap::new(Rationals, 2, vec![vec![q(0), q(0)], vec![q(0), q(1)]]).unwrap();
        assert_eq!(pullback_derivation(&m, &w).unwrap(), w);
    }

    #[test]
    fn t5_derivations() {
        let m = Bimodule::regular(t5());
        assert_eq!(derivation_space(&m, DerivationKind::OnB).dim(), 2);
        assert_eq!(derivation_space(&m, DerivationKind::All).dim(), 2);
        assert_eq!(pullback_space(&m).dim(), 1);
        // w(x) = x pulls back to y ↦ 2x².
        let w = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(2)]]).unwrap();
        let v = pullback_derivation(&m, &w).unwrap();
        assert_eq!(v.image(1), &[q(0), q(0), q(2)]);
        let not_der = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)], vec![q(0); 3]]).unwrap();
        assert!(pullback_derivation(&m, &not_der).is_err());
    }

    #[test]
    fn matrix_algebra_center_and_inner() {
        let m = Bimodule::regular(Arc::new(Triple::over_ground(FiniteAlgebra::matrix_algebra(Rationals, 2))));
        let center = invariant_submodule(&m);
        assert_eq!(center.dim(), 1);
        assert!(center.contains_dense(&[q(1), q(0), q(0), q(1)]));
        let all = derivation_space(&m, DerivationKind::All);
        let inner = derivation_space(&m, DerivationKind::Inner);
        assert_eq!(quotient_dim(&all, &inner).unwrap(), 0);
        assert_eq!(inner.dim(), 3);
    }
}
