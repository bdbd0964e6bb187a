//! The comparison map `Φ` to ordinary Hochschild cochains and the map `χ`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{derivation_space, DerivationKind, LinearMap};
use crate::complex::cochain::{Cochain, Complex, Flavor};
use crate::complex::expand::Slot;
use crate::error::{Error, Result};
use crate::linalg::{rank, Field, Matrix, SparseVec};

/// Restriction along `b_{ij} = 1_B`: a secondary cochain becomes an ordinary one.
pub fn phi_restriction<F: Field>(f: &Cochain<F>) -> Result<Cochain<F>> {
    let complex = f.complex();
    if complex.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("Φ is defined on secondary cochains".into()));
    }
    let ordinary = complex.companion(Flavor::Ordinary);
    let n = f.degree();
    let mut out = ordinary.zero(n)?;
    let dm = complex.module().dim();
    if dm == 0 {
        return Ok(out);
    }
    let unit = Slot::from_vec(complex.triple().b().unit().clone());
    let shape = ordinary.shape(n);
    let pairs = vec![unit; shape.pair_count()];
    out.values_mut().par_chunks_mut(dm).enumerate().for_each(|(o, chunk)| {
        let t = shape.decode_unchecked(o);
        let diag: Vec<Slot<F::Elem>> = t.diag.iter().map(|&a| Slot::Basis(a)).collect();
        chunk.clone_from_slice(&f.eval_slots(&diag, &pairs));
    });
    Ok(out)
}

/// `Φ_n` on cohomology, in the bases of canonical representatives.
#[derive(Clone, Debug)]
pub struct PhiInduced<F: Field> {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Row `i`: coordinates of `Φ(z_i)` for the `i`-th secondary representative.
    pub matrix: Vec<Vec<F::Elem>>,
    pub rank: usize,
    pub kernel_dim: usize,
}

pub fn phi_induced<F: Field>(complex: &Arc<Complex<F>>, n: usize) -> Result<PhiInduced<F>> {
    if complex.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("Φ is defined on secondary cohomology".into()));
    }
    let source = complex.cohomology(n)?;
    let target = complex.companion(Flavor::Ordinary).cohomology(n)?;
    let mut rows = Vec::with_capacity(source.dim());
    for z in source.representatives() {
        let image = phi_restriction(&z)?;
        rows.push(target.class_coordinates(&image).map_err(|e| match e {
            Error::NotCocycle => Error::Invariant("Φ maps a cocycle to a non-cocycle".into()),
            other => other,
        })?);
    }
    let r = if rows.is_empty() || target.dim() == 0 {
        0
    } else {
        rank(&Matrix::from_dense(complex.field().clone(), target.dim(), &rows)?)
    };
    Ok(PhiInduced {
        degree: n,
        source_dim: source.dim(),
        target_dim: target.dim(),
        matrix: rows,
        rank: r,
        kernel_dim: source.dim() - r,
    })
}

/// `χ(u)(a ⊗ b ⊗ α) = a·u(α)·b` for a derivation `u: B → M`.
pub fn chi<F: Field>(complex: &Arc<Complex<F>>, u: &LinearMap<F>) -> Result<Cochain<F>> {
    if complex.flavor() != Flavor::Secondary {
        return Err(Error::Mismatch("χ produces secondary cochains".into()));
    }
    let module = complex.module();
    let t = complex.triple();
    let (da, db, dm) = (t.a().dim(), t.b().dim(), module.dim());
    if u.source() != db || u.target() != dm {
        return Err(Error::Shape(format!("u must map B (dim {db}) to M (dim {dm})")));
    }
    let ders = derivation_space(module, DerivationKind::OnB);
    if !ders.contains(&SparseVec::from_dense(&u.to_coords())) {
        return Err(Error::NotDerivation(" on B".into()));
    }
    let mut out = complex.zero(2)?;
    let shape = complex.shape(2);
    for a in 0..da {
        for b in 0..da {
            for alpha in 0..db {
                let ub = module.act_right(u.image(alpha), &t.a().basis(b));
                let v = module.act_left(&t.a().basis(a), &ub);
                let off = shape.encode_parts(&[a, b], &[alpha]);
                out.values_mut()[off * dm..(off + 1) * dm].clone_from_slice(&v);
            }
        }
    }
    Ok(out)
}
