//! Seeded random cochains with small integer entries.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Cochain, Complex};
use crate::error::Result;
use crate::linalg::Field;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `-3..=3`.
pub fn random_cochain<F: Field>(complex: &Arc<Complex<F>>, n: usize, rng: &mut impl Rng) -> Result<Cochain<F>> {
    let d = complex.dim(n)?;
    let field = complex.field();
    let values = (0..d).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
    complex.cochain(n, values)
}

/// About `nonzero` random entries, the rest zero.
pub fn sparse_random_cochain<F: Field>(
    complex: &Arc<Complex<F>>,
    n: usize,
    nonzero: usize,
    rng: &mut impl Rng,
) -> Result<Cochain<F>> {
    let mut f = complex.zero(n)?;
    let d = f.values().len();
    if d == 0 {
        return Ok(f);
    }
    for _ in 0..nonzero {
        let k = rng.gen_range(0..d);
        f.values_mut()[k] = complex.field().from_i64(rng.gen_range(-3..=3));
    }
    Ok(f)
}

/// `δ` of a random cochain of degree `n − 1`: a random coboundary, hence a cocycle.
pub fn random_coboundary<F: Field>(complex: &Arc<Complex<F>>, n: usize, rng: &mut impl Rng) -> Result<Cochain<F>> {
    assert!(n >= 1, "coboundaries live in positive degree");
    let g = random_cochain(complex, n - 1, rng)?;
    complex.delta(&g)
}
