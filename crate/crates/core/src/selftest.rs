//! Fast invariant suites over the bundled triples, run by `secohom selftest`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{derivation_space, invariant_submodule, pullback_space, DerivationKind, LinearMap};
use crate::catalog;
use crate::complex::{chi, phi_induced, Complex, Flavor};
use crate::error::Result;
use crate::extensions::{classes_equivalent, cocycle_from_section, extension_from_cocycle, first_obstruction};
use crate::gerstenhaber::identities;
use crate::hodge::{hodge_decomposition, idempotent_apply, lambda, minimal_polynomial_apply};
use crate::linalg::{PrimeField, Rational, Rationals};
use crate::poly::{ker_phi2_dim_1var, parse_poly, Dimension, Poly};
use crate::random::{random_coboundary, random_cochain, rng};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelfTestReport {
    pub checks: Vec<Check>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, run: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

type Q = Rationals;

fn secondary(name: &str) -> Arc<Complex<Q>> {
    Complex::new(catalog::regular(catalog::by_name(Rationals, name).expect("catalog name")), Flavor::Secondary)
}

pub fn run() -> SelfTestReport {
    let mut report = SelfTestReport::default();

    report.record("delta squared vanishes", || {
        let mut seen = Vec::new();
        for name in catalog::NAMES {
            let c = secondary(name);
            for n in 0..=2 {
                let prod = c.differential_matrix(n + 1)?.mul(&c.differential_matrix(n)?)?;
                if !prod.is_zero() {
                    return Ok((false, format!("{name}: δ_{}δ_{n} ≠ 0", n + 1)));
                }
            }
            seen.push(name);
        }
        Ok((true, format!("{} triples, n = 0..2", seen.len())))
    });

    report.record("B = k reduces to Hochschild cohomology", || {
        let c = secondary("T2");
        let o = c.companion(Flavor::Ordinary);
        let s: Vec<usize> = (0..=3).map(|n| c.cohomology_dim(n)).collect::<Result<_>>()?;
        let h: Vec<usize> = (0..=3).map(|n| o.cohomology_dim(n)).collect::<Result<_>>()?;
        Ok((s == h && s[0] == 2 && s[1] == 1, format!("secondary {s:?}, ordinary {h:?}")))
    });

    report.record("H0 and H1 closed forms", || {
        let mut detail = Vec::new();
        for name in catalog::NAMES {
            let c = secondary(name);
            let m = c.module();
            let h0 = invariant_submodule(m).dim();
            let h1 = derivation_space(m, DerivationKind::BLinear).dim() - derivation_space(m, DerivationKind::Inner).dim();
            let (c0, c1) = (c.cohomology_dim(0)?, c.cohomology_dim(1)?);
            if (h0, h1) != (c0, c1) {
                return Ok((false, format!("{name}: closed forms ({h0},{h1}) vs complex ({c0},{c1})")));
            }
            detail.push(format!("{name}:{h0},{h1}"));
        }
        Ok((true, detail.join(" ")))
    });

    report.record("ker Φ2 equals Der(B,M)/ε*Der(A,M)", || {
        let mut detail = Vec::new();
        for (name, expected) in [("T3", 0), ("T4", 0), ("T5", 1)] {
            let c = secondary(name);
            let m = c.module();
            let quotient = derivation_space(m, DerivationKind::OnB).dim() - pullback_space(m).dim();
            let k = phi_induced(&c, 2)?.kernel_dim;
            if k != quotient || k != expected {
                return Ok((false, format!("{name}: ker Φ2 = {k}, quotient = {quotient}, expected {expected}")));
            }
            detail.push(format!("{name}:{k}"));
        }
        Ok((true, detail.join(" ")))
    });

    report.record("dim k[X]/<f'> for f = X^n and X + X^p", || {
        for n in 2..=6 {
            let f: Poly<Q, 1> = parse_poly(&Rationals, &format!("X^{n}"))?;
            if ker_phi2_dim_1var(&f)? != Dimension::Finite(n - 1) {
                return Ok((false, format!("X^{n}")));
            }
        }
        for p in [2u64, 3, 5] {
            let fp = PrimeField::new(p)?;
            let f: Poly<PrimeField, 1> = parse_poly(&fp, &format!("X + X^{p}"))?;
            if ker_phi2_dim_1var(&f)? != Dimension::Finite(0) {
                return Ok((false, format!("X + X^{p} over GF({p})")));
            }
        }
        Ok((true, "X^2..X^6 -> 1..5; X + X^p -> 0 for p = 2, 3, 5".into()))
    });

    report.record("shuffle idempotents and Hodge decomposition", || {
        if [lambda(1), lambda(2), lambda(3)] != [0, 2, 6] {
            return Ok((false, "eigenvalues".into()));
        }
        let c = secondary("T5");
        let mut r = rng(101);
        for n in 1..=3 {
            let f = random_cochain(&c, n, &mut r)?;
            if !minimal_polynomial_apply(&f)?.is_zero() {
                return Ok((false, format!("μ_{n}(s_{n}) ≠ 0")));
            }
            let mut total = c.zero(n)?;
            for k in 1..=n {
                let e = idempotent_apply(k, &f)?;
                if idempotent_apply(k, &e)? != e || c.delta(&e)? != idempotent_apply(k, &c.delta(&f)?)? {
                    return Ok((false, format!("e_{n}({k})")));
                }
                total.axpy(&Rational::from_integer(1), &e)?;
            }
            if total != f {
                return Ok((false, format!("Σ e_{n}(k) ≠ id")));
            }
        }
        let mut detail = Vec::new();
        for name in ["T2", "T5"] {
            let c = secondary(name);
            let parts = hodge_decomposition(&c, 2)?;
            let sum: usize = parts.iter().map(|p| p.dim).sum();
            let h2 = c.cohomology_dim(2)?;
            if sum != h2 {
                return Ok((false, format!("{name}: Σ dim H^(k,2-k) = {sum} ≠ dim H2 = {h2}")));
            }
            detail.push(format!("{name}:{:?}", parts.iter().map(|p| p.dim).collect::<Vec<_>>()));
        }
        Ok((true, detail.join(" ")))
    });

    report.record("Gerstenhaber identities", || {
        let mut r = rng(202);
        for name in ["T2", "T5"] {
            let c = secondary(name);
            for (m, n, p) in [(1, 1, 1), (2, 1, 0), (0, 2, 1)] {
                let f = random_cochain(&c, m, &mut r)?;
                let g = random_cochain(&c, n, &mut r)?;
                let h = random_cochain(&c, p, &mut r)?;
                let ok = identities::leibniz(&f, &g)?
                    && identities::cup_via_insertions(&f, &g)?
                    && identities::delta_is_bracket_with_pi(&f)?
                    && identities::homotopy(&f, &g)?
                    && identities::cup_associative(&f, &g, &h)?
                    && identities::jacobi(&f, &g, &h)?;
                if !ok {
                    return Ok((false, format!("{name} degrees ({m},{n},{p})")));
                }
            }
        }
        Ok((true, "T2, T5".into()))
    });

    report.record("extensions and obstructions", || {
        let c = secondary("T5");
        let mut r = rng(303);
        let q = Rational::from_integer;
        let u = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)]])?;
        let x = chi(&c, &u)?;
        if classes_equivalent(&x, &c.zero(2)?)?.equivalent {
            return Ok((false, "χ(u) is trivial".into()));
        }
        let mut y = x.clone();
        y.axpy(&q(1), &random_coboundary(&c, 2, &mut r)?)?;
        let ext = extension_from_cocycle(&y)?;
        let back = cocycle_from_section(&ext, &ext.canonical_section())?;
        if !classes_equivalent(&back, &x)?.equivalent {
            return Ok((false, "round trip changed the class".into()));
        }
        for _ in 0..3 {
            let b = random_coboundary(&c, 2, &mut r)?;
            let o = first_obstruction(&b)?;
            if !(o.is_cocycle && o.vanishes) {
                return Ok((false, "obstruction of a coboundary".into()));
            }
        }
        let o = first_obstruction(&x)?;
        Ok((o.is_cocycle, format!("T5: χ(u) nontrivial, round trip kept its class, χ(u)∘χ(u) closed (vanishes: {})", o.vanishes)))
    });

    report
}
