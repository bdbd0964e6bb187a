use std::sync::Arc;

use proptest::prelude::*;
use secohom::catalog;
use secohom::complex::{Complex, Flavor};
use secohom::gerstenhaber::{bracket, circle, comp_i, cup, identities, pi_cochain};
use secohom::hodge::{act, idempotent_apply, minimal_polynomial_apply, shuffle, Permutation};
use secohom::linalg::{Rational, Rationals};
use secohom::random::{random_cochain, rng};

fn secondary(name: &str) -> Arc<Complex<Rationals>> {
    Complex::new(catalog::regular(catalog::by_name(Rationals, name).unwrap()), Flavor::Secondary)
}

fn name(which: bool) -> &'static str {
    if which { "T5" } else { "T2" }
}

#[test]
fn pi_is_delta_of_identity() {
    for n in ["T2", "T5", "M2"] {
        let c = secondary(n);
        let id = c.identity_cochain().unwrap();
        assert_eq!(pi_cochain(&c).unwrap(), c.delta(&id).unwrap());
        assert_eq!(pi_cochain(&c).unwrap(), cup(&id, &id).unwrap());
    }
}

#[test]
fn insertion_range_is_checked() {
    let c = secondary("T2");
    let f = random_cochain(&c, 2, &mut rng(1)).unwrap();
    let g = random_cochain(&c, 1, &mut rng(2)).unwrap();
    assert!(comp_i(&f, &g, 1).is_ok());
    assert!(comp_i(&f, &g, 2).is_err());
    let z = c.zero(0).unwrap();
    assert!(circle(&z, &z).is_err());
}

#[test]
fn bracket_needs_regular_coefficients() {
    let t = Arc::new(catalog::t5(Rationals));
    let zero = Arc::new(secohom::algebra::Bimodule::zero(t));
    let c = Complex::new(zero, Flavor::Secondary);
    let f = c.zero(1).unwrap();
    assert!(bracket(&f, &f).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cup_and_bracket_identities(seed in any::<u64>(), t5 in any::<bool>(), m in 0usize..3, n in 0usize..3, p in 0usize..3) {
        let c = secondary(name(t5));
        let mut r = rng(seed);
        let f = random_cochain(&c, m, &mut r).unwrap();
        let g = random_cochain(&c, n, &mut r).unwrap();
        let h = random_cochain(&c, p, &mut r).unwrap();
        prop_assert!(identities::leibniz(&f, &g).unwrap());
        prop_assert!(identities::cup_associative(&f, &g, &h).unwrap());
        prop_assert!(identities::cup_via_insertions(&f, &g).unwrap());
        prop_assert!(identities::delta_is_bracket_with_pi(&f).unwrap());
        // f ∘ g needs m + n ≥ 1.
        if m + n > 0 {
            prop_assert!(identities::homotopy(&f, &g).unwrap());
        }
        if m + n > 0 && n + p > 0 && p + m > 0 {
            prop_assert!(identities::jacobi(&f, &g, &h).unwrap());
        }
    }

    #[test]
    fn bracket_is_graded_antisymmetric(seed in any::<u64>(), m in 0usize..3, n in 0usize..3) {
        prop_assume!(m + n > 0);
        let c = secondary("T5");
        let mut r = rng(seed);
        let f = random_cochain(&c, m, &mut r).unwrap();
        let g = random_cochain(&c, n, &mut r).unwrap();
        // [f, g] = −(−1)^{(m−1)(n−1)} [g, f]
        let odd = (m + 1) * (n + 1) % 2 == 1;
        let sign = Rational::from_integer(if odd { 1 } else { -1 });
        prop_assert_eq!(bracket(&f, &g).unwrap(), bracket(&g, &f).unwrap().scaled(&sign));
    }

    #[test]
    fn shuffle_action_and_idempotents(seed in any::<u64>(), n in 1usize..4) {
        let c = secondary("T5");
        let f = random_cochain(&c, n, &mut rng(seed)).unwrap();
        prop_assert!(minimal_polynomial_apply(&f).unwrap().is_zero());
        let mut total = c.zero(n).unwrap();
        for k in 1..=n {
            let e = idempotent_apply(k, &f).unwrap();
            prop_assert_eq!(&idempotent_apply(k, &e).unwrap(), &e);
            for l in (1..=n).filter(|&l| l != k) {
                prop_assert!(idempotent_apply(l, &e).unwrap().is_zero());
            }
            total.axpy(&Rational::from_integer(1), &e).unwrap();
        }
        prop_assert_eq!(total, f.clone());
        let perms = Permutation::all(n);
        let (s, t) = (&perms[seed as usize % perms.len()], &perms[(seed >> 8) as usize % perms.len()]);
        prop_assert_eq!(act(s, &act(t, &f).unwrap()).unwrap(), act(&s.compose(t), &f).unwrap());
        prop_assert_eq!(shuffle(0, &f).unwrap(), f);
    }
}
