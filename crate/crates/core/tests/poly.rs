use proptest::prelude::*;
use secohom::linalg::{PrimeField, Rationals};
use secohom::poly::{
    deformation_matches, deformed_epsilon_check, in_derivative_ideal, jacobian_cokernel_probe, ker_phi2_dim_1var,
    parse_poly, sigma_is_bounded_coboundary, verify_sigma2_cocycle, verify_sigma_cocycle, Dimension, Poly,
};

fn p1(s: &str) -> Poly<Rationals, 1> {
    parse_poly(&Rationals, s).unwrap()
}

fn p2(s: &str) -> Poly<Rationals, 2> {
    parse_poly(&Rationals, s).unwrap()
}

#[test]
fn kernel_dimensions() {
    for n in 2..=6 {
        assert_eq!(ker_phi2_dim_1var(&p1(&format!("X^{n}"))).unwrap(), Dimension::Finite(n - 1));
    }
    assert_eq!(ker_phi2_dim_1var(&p1("X^3 - 3*X")).unwrap(), Dimension::Finite(2));
    for p in [2u64, 3, 5, 7] {
        let k = PrimeField::new(p).unwrap();
        let f: Poly<PrimeField, 1> = parse_poly(&k, &format!("X + X^{p}")).unwrap();
        assert_eq!(ker_phi2_dim_1var(&f).unwrap(), Dimension::Finite(0));
        let g: Poly<PrimeField, 1> = parse_poly(&k, &format!("X^{p}")).unwrap();
        assert_eq!(ker_phi2_dim_1var(&g).unwrap(), Dimension::Infinite);
    }
    assert!(ker_phi2_dim_1var(&p1("5")).is_err());
}

#[test]
fn sigma_classes_for_x_cubed() {
    let f = p1("X^3");
    // <f'> = <X^2>: σ_{X^2} is a coboundary, σ_X and σ_1 are not.
    for (r, trivial) in [("X^2", true), ("X^3 + X^2", true), ("X", false), ("1", false)] {
        let r = p1(r);
        assert!(verify_sigma_cocycle(&f, &r, 8).unwrap());
        assert_eq!(in_derivative_ideal(&f, &r), trivial);
        assert_eq!(sigma_is_bounded_coboundary(&f, &r, 8).unwrap(), trivial, "r = {r}");
    }
}

#[test]
fn deformations_of_epsilon() {
    let f = p1("X^2 + X");
    assert!(deformed_epsilon_check(&f, &p1("X"), 6).unwrap());
    assert!(deformed_epsilon_check(&f, &p1("3*X^2 - 1"), 6).unwrap());
    assert!(!deformation_matches(&f, &p1("X"), &p1("2*X"), 6).unwrap());
}

#[test]
fn two_variable_sigma_and_jacobian() {
    let (f, g) = (p2("X^2"), p2("Y^2"));
    assert!(verify_sigma2_cocycle(&f, &g, &p2("X"), &p2("Y^3"), 4).unwrap());
    assert_eq!(jacobian_cokernel_probe(&f, &g, 3).unwrap(), 8);
    // A Jacobian with constant nonzero determinant has trivial cokernel.
    assert_eq!(jacobian_cokernel_probe(&p2("X"), &p2("Y"), 3).unwrap(), 0);
    assert!(jacobian_cokernel_probe(&f, &g, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivative_is_a_derivation(a in proptest::collection::vec(-4i64..=4, 1..5), b in proptest::collection::vec(-4i64..=4, 1..5)) {
        let k = Rationals;
        let pa = Poly::<_, 1>::from_dense(k, &a.iter().map(|&x| k_elem(x)).collect::<Vec<_>>());
        let pb = Poly::<_, 1>::from_dense(k, &b.iter().map(|&x| k_elem(x)).collect::<Vec<_>>());
        let lhs = pa.mul(&pb).derivative(0);
        let rhs = pa.derivative(0).mul(&pb).add(&pa.mul(&pb.derivative(0)));
        prop_assert_eq!(lhs, rhs);
        if !pb.is_zero() {
            let (quo, rem) = pa.div_rem(&pb);
            prop_assert_eq!(quo.mul(&pb).add(&rem), pa.clone());
            prop_assert!(rem.degree().map_or(true, |d| d < pb.degree().unwrap()));
        }
        prop_assert_eq!(parse_poly::<Rationals, 1>(&k, &pa.to_string()).unwrap(), pa);
    }
}

fn k_elem(x: i64) -> secohom::linalg::Rational {
    secohom::linalg::Rational::from_integer(x)
}
