//! End-to-end acceptance run. Prints one line per criterion and exits nonzero
//! if any of them fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use secohom::algebra::{derivation_space, invariant_submodule, pullback_space, DerivationKind, LinearMap};
use secohom::catalog;
use secohom::complex::{chi, phi_induced, Cochain, Complex, Flavor};
use secohom::extensions::{
    classes_equivalent, cocycle_from_section, extension_from_cocycle, first_obstruction, normalization_identity,
};
use secohom::gerstenhaber::identities;
use secohom::hodge::{hodge_decomposition, idempotent_apply, lambda, minimal_polynomial_apply};
use secohom::linalg::{PrimeField, Rational, Rationals};
use secohom::poly::{ker_phi2_dim_1var, parse_poly, Dimension, Poly};
use secohom::random::{random_coboundary, random_cochain, rng};
use secohom::Result;

use rand::Rng;

type Q = Rationals;
type Outcome = Result<std::result::Result<String, String>>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn secondary(name: &str) -> Arc<Complex<Q>> {
    Complex::new(catalog::regular(catalog::by_name(Rationals, name).unwrap()), Flavor::Secondary)
}

/// A random 2-cocycle: a random coboundary plus random multiples of the class representatives.
fn random_cocycle(c: &Arc<Complex<Q>>, n: usize, r: &mut impl rand::Rng) -> Result<Cochain<Q>> {
    let mut z = if n == 0 { c.zero(0)? } else { random_coboundary(c, n, r)? };
    for rep in c.cohomology(n)?.representatives() {
        z.axpy(&q(r.gen_range(-2..=2)), &rep)?;
    }
    Ok(z)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($msg)+)));
        }
    };
}

fn complex_property() -> Outcome {
    for name in catalog::NAMES {
        let c = secondary(name);
        for n in 0..=2 {
            let prod = c.differential_matrix(n + 1)?.mul(&c.differential_matrix(n)?)?;
            ensure!(prod.is_zero(), "{name}: δ_{}·δ_{n} ≠ 0", n + 1);
        }
    }
    Ok(Ok(format!("{} triples, n = 0..2", catalog::NAMES.len())))
}

fn reduction_to_ordinary() -> Outcome {
    const GOLDEN: [usize; 4] = [2, 1, 1, 1];
    let c = secondary("T2");
    let o = c.companion(Flavor::Ordinary);
    let s: Vec<usize> = (0..=3).map(|n| c.cohomology_dim(n)).collect::<Result<_>>()?;
    let h: Vec<usize> = (0..=3).map(|n| o.cohomology_dim(n)).collect::<Result<_>>()?;
    ensure!(h == GOLDEN, "ordinary {h:?}, golden {GOLDEN:?}");
    ensure!(s == h, "secondary {s:?}, ordinary {h:?}");
    Ok(Ok(format!("T2 degrees 0..3: {s:?}")))
}

fn closed_forms() -> Outcome {
    let mut detail = Vec::new();
    for name in catalog::NAMES {
        let c = secondary(name);
        let m = c.module();
        let h0 = invariant_submodule(m).dim();
        let h1 = derivation_space(m, DerivationKind::BLinear).dim() - derivation_space(m, DerivationKind::Inner).dim();
        let got = (c.cohomology_dim(0)?, c.cohomology_dim(1)?);
        ensure!((h0, h1) == got, "{name}: closed forms ({h0},{h1}), complex {got:?}");
        detail.push(format!("{name}=({h0},{h1})"));
    }
    Ok(Ok(detail.join(" ")))
}

fn ker_phi2() -> Outcome {
    let mut detail = Vec::new();
    for (name, expected) in [("T3", 0), ("T4", 0), ("T5", 1)] {
        let c = secondary(name);
        let m = c.module();
        let quotient = derivation_space(m, DerivationKind::OnB).dim() - pullback_space(m).dim();
        let k = phi_induced(&c, 2)?.kernel_dim;
        ensure!(k == quotient && k == expected, "{name}: ker Φ2 = {k}, quotient {quotient}, expected {expected}");
        detail.push(format!("{name}={k}"));
    }
    Ok(Ok(detail.join(" ")))
}

fn poly_kerphi() -> Outcome {
    let t = Instant::now();
    for n in 2..=6 {
        let f: Poly<Q, 1> = parse_poly(&Rationals, &format!("X^{n}"))?;
        let d = ker_phi2_dim_1var(&f)?;
        ensure!(d == Dimension::Finite(n - 1), "X^{n}: {d:?}");
    }
    for p in [2u64, 3, 5] {
        let fp = PrimeField::new(p)?;
        let f: Poly<PrimeField, 1> = parse_poly(&fp, &format!("X + X^{p}"))?;
        let d = ker_phi2_dim_1var(&f)?;
        ensure!(d == Dimension::Finite(0), "X + X^{p} over GF({p}): {d:?}");
    }
    let ms = t.elapsed().as_millis();
    ensure!(ms < 1000, "took {ms} ms");
    Ok(Ok(format!("X^n -> n-1 for n = 2..6; X + X^p -> 0 for p = 2, 3, 5 ({ms} ms)")))
}

fn hodge() -> Outcome {
    let l = [lambda(1), lambda(2), lambda(3)];
    ensure!(l == [0, 2, 6], "eigenvalues {l:?}");
    let mut r = rng(6);
    for name in ["T2", "T5"] {
        let c = secondary(name);
        for n in 1..=4 {
            for _ in 0..50 {
                let f = random_cochain(&c, n, &mut r)?;
                ensure!(minimal_polynomial_apply(&f)?.is_zero(), "{name}: μ_{n}(s_{n}) ≠ 0");
            }
            for _ in 0..3 {
                let f = random_cochain(&c, n, &mut r)?;
                let parts: Vec<Cochain<Q>> = (1..=n).map(|k| idempotent_apply(k, &f)).collect::<Result<_>>()?;
                let mut total = c.zero(n)?;
                for (k, e) in parts.iter().enumerate() {
                    for (j, _) in parts.iter().enumerate() {
                        let ej = idempotent_apply(j + 1, e)?;
                        ensure!(if j == k { &ej == e } else { ej.is_zero() }, "{name}: e_{n}({})e_{n}({})", j + 1, k + 1);
                    }
                    total.axpy(&q(1), e)?;
                }
                ensure!(total == f, "{name}: Σ_k e_{n}(k) ≠ id");
                if n <= 3 {
                    let df = c.delta(&f)?;
                    for k in 1..=n + 1 {
                        let lhs = c.delta(&idempotent_apply(k, &f)?)?;
                        ensure!(lhs == idempotent_apply(k, &df)?, "{name}: δ e_{n}({k}) ≠ e_{}({k}) δ", n + 1);
                    }
                }
            }
        }
    }
    let mut detail = vec!["λ = 0, 2, 6".to_string()];
    for name in ["T2", "T5"] {
        let c = secondary(name);
        let dims: Vec<usize> = hodge_decomposition(&c, 2)?.iter().map(|p| p.dim).collect();
        let h2 = c.cohomology_dim(2)?;
        ensure!(dims.iter().sum::<usize>() == h2, "{name}: components {dims:?}, dim H2 = {h2}");
        detail.push(format!("{name} H2 = {dims:?}"));
    }
    Ok(Ok(detail.join("; ")))
}

fn gerstenhaber() -> Outcome {
    const TUPLES: usize = 100;
    const SAMPLED: usize = 20_000;
    let (mut tuples, mut homotopy, mut jacobi) = (0, 0, 0);
    let mut sampled = 0;
    for (t, name) in ["T2", "T5"].into_iter().enumerate() {
        let c = secondary(name);
        let mut r = rng(7 + t as u64);
        for k in 0..TUPLES {
            let (m, n, p) = (k % 3, (k / 3) % 3, (k / 9) % 3);
            let f = random_cochain(&c, m, &mut r)?;
            let g = random_cochain(&c, n, &mut r)?;
            let h = random_cochain(&c, p, &mut r)?;
            let at = format!("{name} degrees ({m},{n},{p}), tuple {k}");
            ensure!(identities::leibniz(&f, &g)?, "Leibniz: {at}");
            ensure!(identities::cup_via_insertions(&f, &g)?, "cup via insertions: {at}");
            ensure!(identities::delta_is_bracket_with_pi(&f)?, "δ = [−, −π]: {at}");
            if c.dim_u128(m + n + p) <= c.max_basis() as u128 {
                ensure!(identities::cup_associative(&f, &g, &h)?, "cup associativity: {at}");
            } else {
                // C^{m+n+p} is past the basis cap: compare both bracketings at sampled tensors.
                let shape = c.shape(m + n + p);
                let tensors: Vec<_> =
                    (0..SAMPLED).map(|_| shape.decode(r.gen_range(0..shape.count()))).collect::<Result<_>>()?;
                ensure!(identities::cup_associative_at(&f, &g, &h, &tensors)?, "cup associativity (sampled): {at}");
                sampled += 1;
            }
            tuples += 1;
            // Pre-Lie identities need slots j < i < deg f, resp. i ≤ j < i + deg g,
            // so out-of-range degrees are replaced by the nearest valid ones.
            let f2 = if m == 2 { f.clone() } else { random_cochain(&c, 2, &mut r)? };
            ensure!(identities::pre_lie_first(&f2, &g, &h, 1, 0)?, "first pre-Lie: {at}");
            let f1 = if m > 0 { f.clone() } else { random_cochain(&c, 1, &mut r)? };
            let g1 = if n > 0 { g.clone() } else { random_cochain(&c, 1, &mut r)? };
            for i in 0..f1.degree() {
                for j in i..i + g1.degree() {
                    ensure!(identities::pre_lie_second(&f1, &g1, &h, i, j)?, "second pre-Lie ({i},{j}): {at}");
                }
            }
            // f ∘ g has degree m + n − 1, so degree (0, 0) pairs are skipped.
            if m + n > 0 {
                ensure!(identities::homotopy(&f, &g)?, "homotopy: {at}");
                homotopy += 1;
            }
            if m + n > 0 && n + p > 0 && p + m > 0 {
                ensure!(identities::jacobi(&f, &g, &h)?, "Jacobi: {at}");
                jacobi += 1;
            }
            let zf = random_cocycle(&c, m, &mut r)?;
            let zg = random_cocycle(&c, n, &mut r)?;
            ensure!(identities::graded_commutative_up_to_coboundary(&zf, &zg)?, "graded commutativity: {at}");
        }
    }
    Ok(Ok(format!(
        "T2 + T5: {tuples} tuples each for Leibniz, insertions, δ = [−, −π], associativity, \
         commutativity and pre-Lie; homotopy {homotopy}, Jacobi {jacobi}; {sampled} associativity tuples past the cap checked at {SAMPLED} tensors"
    )))
}

fn extensions() -> Outcome {
    let mut r = rng(8);
    for name in ["T2", "T5"] {
        let c = secondary(name);
        for _ in 0..10 {
            let z = random_cocycle(&c, 2, &mut r)?;
            ensure!(normalization_identity(&z)?, "{name}: normalization identity");
            let ext = extension_from_cocycle(&z)?;
            ext.validate()?;
            let back = cocycle_from_section(&ext, &ext.canonical_section())?;
            ensure!(back == z && classes_equivalent(&back, &z)?.equivalent, "{name}: round trip");
            let g = random_cochain(&c, 1, &mut r)?;
            let gm = LinearMap::from_coords(Rationals, c.triple().a().dim(), c.module().dim(), g.values());
            let other = cocycle_from_section(&ext, &ext.section_with(&gm)?)?;
            ensure!(z.sub(&other)? == c.delta(&g.neg())?, "{name}: section change is not δ(−g)");
            ensure!(classes_equivalent(&other, &z)?.equivalent, "{name}: class depends on the section");
        }
    }
    let c = secondary("T5");
    let u = LinearMap::new(Rationals, 3, vec![vec![q(0); 3], vec![q(0), q(1), q(0)]])?;
    let x = chi(&c, &u)?;
    ensure!(!classes_equivalent(&x, &c.zero(2)?)?.equivalent, "χ(u) equivalent to 0");
    ensure!(classes_equivalent(&x, &x.add(&random_coboundary(&c, 2, &mut r)?)?)?.equivalent, "χ(u) + δg not equivalent to χ(u)");
    Ok(Ok("T2, T5: 10 cocycles each; T5: χ(u) not equivalent to 0".into()))
}

fn obstructions() -> Outcome {
    let mut r = rng(9);
    for name in ["T2", "T5"] {
        let c = secondary(name);
        for k in 0..25 {
            let o = first_obstruction(&random_cocycle(&c, 2, &mut r)?)?;
            ensure!(o.is_cocycle, "{name}: δ(c∘c) ≠ 0 for cocycle {k}");
        }
        for k in 0..5 {
            let o = first_obstruction(&random_coboundary(&c, 2, &mut r)?)?;
            ensure!(o.is_cocycle && o.vanishes, "{name}: obstruction of coboundary {k} does not vanish");
        }
    }
    Ok(Ok("T2, T5: 25 cocycles each closed; coboundary obstructions vanish".into()))
}

fn cli_end_to_end() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_secohom");
    let st = Command::new(exe).arg("selftest").env_remove("SECOHOM_MAX_BASIS").output().expect("run secohom");
    ensure!(st.status.success(), "selftest exited with {:?}", st.status.code());
    let spec = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/t5.json");
    let golden = std::fs::read(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/golden/t5_cohomology.json")).unwrap();
    let run = || {
        Command::new(exe)
            .args(["cohomology", "--spec", spec.to_str().unwrap(), "--degrees", "0..2", "--output", "json"])
            .env_remove("SECOHOM_MAX_BASIS")
            .output()
            .expect("run secohom")
    };
    let (a, b) = (run(), run());
    ensure!(a.status.success() && b.status.success(), "cohomology failed");
    ensure!(a.stdout == b.stdout, "two runs differ");
    ensure!(a.stdout == golden, "report differs from the golden file");
    Ok(Ok("selftest exit 0; T5 report identical across runs and to the golden file".into()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("δ∘δ = 0", complex_property),
        ("B = k reduction", reduction_to_ordinary),
        ("H0/H1 closed forms", closed_forms),
        ("ker Φ2 vs derivations", ker_phi2),
        ("poly kerphi", poly_kerphi),
        ("shuffles and Hodge", hodge),
        ("Gerstenhaber identities", gerstenhaber),
        ("extensions", extensions),
        ("obstructions", obstructions),
        ("CLI end to end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} [{:.1}s]: {detail}", k + 1, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
