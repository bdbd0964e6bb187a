use std::sync::Arc;

use crate::complex::cochain::{Cochain, Complex};
use crate::error::{Error, Result};
use crate::linalg::{column_space, nullspace, rank, solve, Field, Subspace};

/// `H^n = ker δ_n / im δ_{n−1}` with canonical representatives.
///
/// Representatives are the reduced echelon basis of the normal forms of
/// cocycles modulo coboundaries, so cohomologous cocycles have the same
/// normal form.
#[derive(Clone, Debug)]
pub struct CohomologySpace<F: Field> {
    complex: Arc<Complex<F>>,
    degree: usize,
    cocycles: Subspace<F>,
    coboundaries: Subspace<F>,
    representatives: Subspace<F>,
}

impl<F: Field> CohomologySpace<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    pub fn complex(&self) -> &Arc<Complex<F>> {
        &self.complex
    }

    pub fn cocycles(&self) -> &Subspace<F> {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace<F> {
        &self.coboundaries
    }

    pub fn representatives(&self) -> Vec<Cochain<F>> {
        self.representatives
            .basis()
            .iter()
            .map(|v| self.complex.cochain_from_sparse(self.degree, v).expect("degree within cap"))
            .collect()
    }

    fn check(&self, f: &Cochain<F>) -> Result<()> {
        if !f.complex().same_as(&self.complex) || f.degree() != self.degree {
            return Err(Error::Mismatch("cochain is not in this cohomology degree".into()));
        }
        Ok(())
    }

    /// Canonical representative of the class of a cocycle.
    pub fn normal_form(&self, f: &Cochain<F>) -> Result<Cochain<F>> {
        self.check(f)?;
        let v = f.to_sparse();
        if !self.cocycles.contains(&v) {
            return Err(Error::NotCocycle);
        }
        self.complex.cochain_from_sparse(self.degree, &self.coboundaries.reduce(v))
    }

    /// Coordinates of the class of `f` in the basis of representatives.
    pub fn class_coordinates(&self, f: &Cochain<F>) -> Result<Vec<F::Elem>> {
        let nf = self.normal_form(f)?.to_sparse();
        self.representatives
            .coordinates(&nf)
            .ok_or_else(|| Error::Invariant("normal form outside the span of representatives".into()))
    }

    pub fn is_coboundary(&self, f: &Cochain<F>) -> Result<bool> {
        self.check(f)?;
        Ok(self.coboundaries.contains(&f.to_sparse()))
    }
}

impl<F: Field> Complex<F> {
    /// Image of `δ_{n−1}` inside `C^n` (zero for `n = 0`).
    pub fn coboundary_space(&self, n: usize) -> Result<Subspace<F>> {
        if n == 0 {
            return Ok(Subspace::zero(self.field().clone(), self.dim(0)?));
        }
        Ok(column_space(&self.differential_matrix(n - 1)?))
    }

    pub fn cocycle_space(&self, n: usize) -> Result<Subspace<F>> {
        Ok(nullspace(&self.differential_matrix(n)?))
    }

    pub fn cohomology(self: &Arc<Self>, n: usize) -> Result<CohomologySpace<F>> {
        let cocycles = self.cocycle_space(n)?;
        let coboundaries = self.coboundary_space(n)?;
        if let Some(i) = coboundaries.first_outside(&cocycles) {
            return Err(Error::Invariant(format!("coboundary {i} of degree {n} is not a cocycle")));
        }
        let reps = cocycles.complement_basis(&coboundaries);
        let representatives = Subspace::from_spanning(self.field().clone(), cocycles.ambient(), reps);
        Ok(CohomologySpace { complex: self.clone(), degree: n, cocycles, coboundaries, representatives })
    }

    /// `dim H^n` from ranks alone.
    pub fn cohomology_dim(&self, n: usize) -> Result<usize> {
        let total = self.dim(n)?;
        let out = rank(&self.differential_matrix(n)?);
        let inc = if n == 0 { 0 } else { rank(&self.differential_matrix(n - 1)?) };
        total
            .checked_sub(out + inc)
            .ok_or_else(|| Error::Invariant(format!("rank δ_{n} + rank δ_{} exceeds dim C^{n}", n.wrapping_sub(1))))
    }

    pub fn is_cocycle(self: &Arc<Self>, f: &Cochain<F>) -> Result<bool> {
        Ok(self.delta(f)?.is_zero())
    }

    /// Some `g` with `δ g = f`, if one exists.
    pub fn coboundary_preimage(self: &Arc<Self>, f: &Cochain<F>) -> Result<Option<Cochain<F>>> {
        if !f.complex().same_as(self) {
            return Err(Error::Mismatch("cochain belongs to a different complex".into()));
        }
        let n = f.degree();
        if n == 0 {
            return Err(Error::DegreeOutOfRange("degree-0 cochains have no preimage under δ".into()));
        }
        let m = self.differential_matrix(n - 1)?;
        match solve(&m, f.values()) {
            Some(x) => Ok(Some(self.cochain(n - 1, x)?)),
            None => Ok(None),
        }
    }
}

pub fn is_cocycle<F: Field>(f: &Cochain<F>) -> Result<bool> {
    f.complex().is_cocycle(f)
}

pub fn coboundary_preimage<F: Field>(f: &Cochain<F>) -> Result<Option<Cochain<F>>> {
    f.complex().coboundary_preimage(f)
}
