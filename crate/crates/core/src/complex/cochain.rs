use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bimodule, Triple};
use crate::complex::tensor::{TensorIndex, TensorShape};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};

/// Default bound on `dim C^n` before anything is materialized.
pub const DEFAULT_MAX_BASIS: usize = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `Hom(A^{⊗n}, M)` with the Hochschild differential.
    Ordinary,
    /// `Hom(A^{⊗n} ⊗ B^{⊗n(n−1)/2}, M)` with `δ^ε`.
    Secondary,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Ordinary => "ordinary",
            Flavor::Secondary => "secondary",
        })
    }
}

/// The cochain complex of a bimodule in one flavor, with a size cap.
#[derive(Debug)]
pub struct Complex<F: Field> {
    module: Arc<Bimodule<F>>,
    flavor: Flavor,
    max_basis: usize,
}

impl<F: Field> Complex<F> {
    pub fn new(module: Arc<Bimodule<F>>, flavor: Flavor) -> Arc<Self> {
        Self::with_max_basis(module, flavor, DEFAULT_MAX_BASIS)
    }

    pub fn with_max_basis(module: Arc<Bimodule<F>>, flavor: Flavor, max_basis: usize) -> Arc<Self> {
        Arc::new(Complex { module, flavor, max_basis })
    }

    /// Same module and cap, other flavor.
    pub fn companion(&self, flavor: Flavor) -> Arc<Self> {
        Self::with_max_basis(self.module.clone(), flavor, self.max_basis)
    }

    pub fn module(&self) -> &Arc<Bimodule<F>> {
        &self.module
    }

    pub fn triple(&self) -> &Arc<Triple<F>> {
        self.module.triple()
    }

    pub fn field(&self) -> &F {
        self.module.field()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn max_basis(&self) -> usize {
        self.max_basis
    }

    pub fn same_as(&self, other: &Complex<F>) -> bool {
        self.flavor == other.flavor && (Arc::ptr_eq(&self.module, &other.module) || self.module == other.module)
    }

    pub fn shape(&self, n: usize) -> TensorShape {
        let t = self.triple();
        let db = match self.flavor {
            Flavor::Ordinary => 1,
            Flavor::Secondary => t.b().dim(),
        };
        TensorShape::new(n, t.a().dim(), db)
    }

    /// `dim C^n` without the cap check.
    pub fn dim_u128(&self, n: usize) -> u128 {
        self.shape(n).count_u128().saturating_mul(self.module.dim() as u128)
    }

    /// `dim C^n`, refusing anything above the cap.
    pub fn dim(&self, n: usize) -> Result<usize> {
        let requested = self.dim_u128(n);
        if requested > self.max_basis as u128 {
            return Err(Error::SizeCap { degree: n, requested, cap: self.max_basis });
        }
        Ok(requested as usize)
    }

    pub fn zero(self: &Arc<Self>, n: usize) -> Result<Cochain<F>> {
        let d = self.dim(n)?;
        Ok(Cochain { complex: self.clone(), degree: n, values: vec![self.field().zero(); d] })
    }

    pub fn cochain(self: &Arc<Self>, n: usize, values: Vec<F::Elem>) -> Result<Cochain<F>> {
        let d = self.dim(n)?;
        if values.len() != d {
            return Err(Error::Shape(format!("C^{n} has dimension {d}, got {} values", values.len())));
        }
        Ok(Cochain { complex: self.clone(), degree: n, values })
    }

    pub fn cochain_from_sparse(self: &Arc<Self>, n: usize, v: &SparseVec<F::Elem>) -> Result<Cochain<F>> {
        let d = self.dim(n)?;
        Ok(Cochain { complex: self.clone(), degree: n, values: v.to_dense(d, &self.field().zero()) })
    }

    fn require_regular(&self) -> Result<()> {
        if self.module.is_regular() {
            Ok(())
        } else {
            Err(Error::CoefficientsMustBeA)
        }
    }

    /// The 0-cochain `1_A`.
    pub fn unit_cochain(self: &Arc<Self>) -> Result<Cochain<F>> {
        self.require_regular()?;
        let a = self.triple().a();
        self.cochain(0, a.to_dense(a.unit()))
    }

    /// The 1-cochain `id_A`.
    pub fn identity_cochain(self: &Arc<Self>) -> Result<Cochain<F>> {
        self.require_regular()?;
        let d = self.triple().a().dim();
        let mut f = self.zero(1)?;
        for i in 0..d {
            f.values[i * d + i] = self.field().one();
        }
        Ok(f)
    }
}

/// An element of `C^n`. Values are stored tensor-offset major, `M`-coordinate minor.
#[derive(Clone)]
pub struct Cochain<F: Field> {
    complex: Arc<Complex<F>>,
    degree: usize,
    values: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Cochain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(C^{} {}, nnz {})", self.degree, self.complex.flavor, self.nnz())?;
        if self.values.len() <= 64 {
            write!(f, " [")?;
            for (k, v) in self.values.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Field> PartialEq for Cochain<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.values == other.values && self.complex.same_as(&other.complex)
    }
}

impl<F: Field> Cochain<F> {
    pub fn complex(&self) -> &Arc<Complex<F>> {
        &self.complex
    }

    pub fn module(&self) -> &Arc<Bimodule<F>> {
        self.complex.module()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn shape(&self) -> TensorShape {
        self.complex.shape(self.degree)
    }

    pub fn values(&self) -> &[F::Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<F::Elem> {
        self.values
    }

    pub fn to_sparse(&self) -> SparseVec<F::Elem> {
        SparseVec::from_dense(&self.values)
    }

    pub fn nnz(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Value on the basis tensor with the given offset.
    pub fn at(&self, offset: usize) -> &[F::Elem] {
        let dm = self.module().dim();
        &self.values[offset * dm..(offset + 1) * dm]
    }

    pub fn eval(&self, t: &TensorIndex) -> Result<&[F::Elem]> {
        let off = self.shape().encode(t)?;
        Ok(self.at(off))
    }

    pub fn set(&mut self, t: &TensorIndex, value: &[F::Elem]) -> Result<()> {
        let dm = self.module().dim();
        if value.len() != dm {
            return Err(Error::Shape(format!("value has length {} (expected dim M = {dm})", value.len())));
        }
        let off = self.shape().encode(t)?;
        self.values[off * dm..(off + 1) * dm].clone_from_slice(value);
        Ok(())
    }

    pub(crate) fn values_mut(&mut self) -> &mut [F::Elem] {
        &mut self.values
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.complex.same_as(&other.complex) {
            return Err(Error::Mismatch("cochains belong to different complexes".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Mismatch(format!("degrees {} and {} differ", self.degree, other.degree)));
        }
        Ok(())
    }

    /// `self += c · other`
    pub fn axpy(&mut self, c: &F::Elem, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_mul(c, b);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(&self.complex.field().one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(&-self.complex.field().one(), other)?;
        Ok(out)
    }

    pub fn scaled(&self, c: &F::Elem) -> Self {
        let values = self.values.iter().map(|v| v.clone() * c).collect();
        Cochain { complex: self.complex.clone(), degree: self.degree, values }
    }

    pub fn neg(&self) -> Self {
        let values = self.values.iter().map(|v| -v.clone()).collect();
        Cochain { complex: self.complex.clone(), degree: self.degree, values }
    }

    /// Moves the cochain into another complex over the same module and tensor shape.
    pub(crate) fn rehome(self, complex: Arc<Complex<F>>) -> Self {
        debug_assert_eq!(complex.dim_u128(self.degree), self.values.len() as u128);
        Cochain { complex, degree: self.degree, values: self.values }
    }
}
