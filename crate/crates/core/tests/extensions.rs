use std::sync::Arc;

use proptest::prelude::*;
use secohom::algebra::{pullback_derivation, LinearMap};
use secohom::catalog;
use secohom::complex::{chi, Cochain, Complex, Flavor};
use secohom::extensions::{
    classes_equivalent, cocycle_from_section, extension_from_cocycle, first_obstruction, normalization_identity,
};
use secohom::linalg::{Rational, Rationals};
use secohom::random::{random_coboundary, random_cochain, rng};

type Q = Rationals;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn secondary(name: &str) -> Arc<Complex<Q>> {
    Complex::new(catalog::regular(catalog::by_name(Rationals, name).unwrap()), Flavor::Secondary)
}

/// A random 2-cocycle: a coboundary plus a multiple of `χ(u)` on T5.
fn random_cocycle(c: &Arc<Complex<Q>>, seed: u64) -> Cochain<Q> {
    let mut r = rng(seed);
    let mut z = random_coboundary(c, 2, &mut r).unwrap();
    for rep in c.cohomology(2).unwrap().representatives() {
        z.axpy(&q((seed % 5) as i64 - 2), &rep).unwrap();
    }
    z
}

#[test]
fn chi_of_pulled_back_derivation_is_trivial() {
    let c = secondary("T5");
    // w(x) = x on k[x]/(x³), so w(x²) = 2x²; its pullback is y ↦ 2x².
    let w = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(2)]]).unwrap();
    let v = pullback_derivation(c.module(), &w).unwrap();
    assert_eq!(v.image(1), &[q(0), q(0), q(2)]);
    let zero = c.zero(2).unwrap();
    for u in [v.clone(), LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(0), q(-2)]]).unwrap()] {
        let x = chi(&c, &u).unwrap();
        assert!(c.is_cocycle(&x).unwrap());
        assert!(classes_equivalent(&x, &zero).unwrap().equivalent);
    }
    // u(y) = x is not a pullback; its class is nonzero.
    let u = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)]]).unwrap();
    let x = chi(&c, &u).unwrap();
    let eq = classes_equivalent(&x, &zero).unwrap();
    assert!(!eq.equivalent && eq.witness.is_none());
}

#[test]
fn chi_rejects_non_derivations() {
    let c = secondary("T5");
    let u = LinearMap::new(Rationals, 3, vec![vec![q(1), q(0), q(0)], vec![q(0); 3]]).unwrap();
    assert!(chi(&c, &u).is_err());
}

#[test]
fn non_cocycles_are_rejected() {
    let c = secondary("T2");
    let f = random_cochain(&c, 2, &mut rng(9)).unwrap();
    assert!(!c.is_cocycle(&f).unwrap());
    assert!(extension_from_cocycle(&f).is_err());
    assert!(first_obstruction(&f).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extension_round_trip(seed in any::<u64>(), t5 in any::<bool>()) {
        let c = secondary(if t5 { "T5" } else { "T2" });
        let z = random_cocycle(&c, seed);
        prop_assert!(normalization_identity(&z).unwrap());
        let ext = extension_from_cocycle(&z).unwrap();
        ext.validate().unwrap();
        let back = cocycle_from_section(&ext, &ext.canonical_section()).unwrap();
        prop_assert_eq!(&back, &z);
        // Another section a ↦ a + g(a) changes the cocycle by δ(−g).
        let g = random_cochain(&c, 1, &mut rng(seed ^ 0x5a5a)).unwrap();
        let gm = LinearMap::from_coords(Rationals, c.triple().a().dim(), c.module().dim(), g.values());
        let other = cocycle_from_section(&ext, &ext.section_with(&gm).unwrap()).unwrap();
        prop_assert_eq!(z.sub(&other).unwrap(), c.delta(&g.neg()).unwrap());
        let eq = classes_equivalent(&other, &z).unwrap();
        prop_assert!(eq.equivalent);
    }

    #[test]
    fn obstruction_is_closed(seed in any::<u64>(), t5 in any::<bool>()) {
        let c = secondary(if t5 { "T5" } else { "T2" });
        let o = first_obstruction(&random_cocycle(&c, seed)).unwrap();
        prop_assert!(o.is_cocycle);
        let b = first_obstruction(&random_coboundary(&c, 2, &mut rng(seed)).unwrap()).unwrap();
        prop_assert!(b.is_cocycle && b.vanishes);
        if let Some(w) = b.witness {
            prop_assert_eq!(c.delta(&w).unwrap(), b.cochain);
        }
    }
}
