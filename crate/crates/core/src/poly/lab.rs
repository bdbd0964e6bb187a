use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Field, Matrix};
use crate::poly::Poly;

/// The triple `(k[X₁..X_N], k[T₁..T_N], T_i ↦ f_i)`; elements of `B` are
/// polynomials in the `T_i`, stored in the same representation as `A`.
#[derive(Clone, Debug)]
pub struct PolyTriple<F: Field, const N: usize> {
    field: F,
    gens: [Poly<F, N>; N],
}

impl<F: Field, const N: usize> PolyTriple<F, N> {
    pub fn new(gens: [Poly<F, N>; N]) -> Result<Self> {
        if gens.iter().any(Poly::is_constant) {
            return Err(Error::Precondition("every generator image must be nonconstant".into()));
        }
        let field = gens[0].field().clone();
        Ok(PolyTriple { field, gens })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn gens(&self) -> &[Poly<F, N>; N] {
        &self.gens
    }

    /// `ε(β) = β(f₁, …, f_N)`
    pub fn eps(&self, beta: &Poly<F, N>) -> Poly<F, N> {
        beta.compose(&self.gens)
    }

    /// `σ_a(P ⊗ Q ⊗ Λ) = P Q Σ_i (∂Λ/∂T_i)(f) a_i`
    pub fn sigma(&self, a: &[Poly<F, N>; N], p: &Poly<F, N>, q: &Poly<F, N>, lambda: &Poly<F, N>) -> Poly<F, N> {
        let mut s = Poly::zero(self.field.clone());
        for (i, ai) in a.iter().enumerate() {
            s = s.add(&self.eps(&lambda.derivative(i)).mul(ai));
        }
        p.mul(q).mul(&s)
    }

    /// `(δ₁w)(a₀ ⊗ a₁ ⊗ b₀₁)`
    pub fn delta1(&self, w: impl Fn(&Poly<F, N>) -> Poly<F, N>, a0: &Poly<F, N>, a1: &Poly<F, N>, b01: &Poly<F, N>) -> Poly<F, N> {
        let e = self.eps(b01);
        let head = a0.mul(&e).mul(&w(a1));
        let mid = w(&e.mul(a0).mul(a1));
        let tail = w(a0).mul(a1).mul(&e);
        head.sub(&mid).add(&tail)
    }

    /// `(δ₂σ)(a₀ ⊗ a₁ ⊗ a₂ ⊗ b₀₁ ⊗ b₀₂ ⊗ b₁₂)`
    pub fn delta2(&self, sigma: &impl Fn(&Poly<F, N>, &Poly<F, N>, &Poly<F, N>) -> Poly<F, N>, t: &[Poly<F, N>; 6]) -> Poly<F, N> {
        let [a0, a1, a2, b01, b02, b12] = t;
        let head = a0.mul(&self.eps(&b01.mul(b02))).mul(&sigma(a1, a2, b12));
        let m0 = sigma(&self.eps(b01).mul(a0).mul(a1), a2, &b02.mul(b12));
        let m1 = sigma(a0, &self.eps(b12).mul(a1).mul(a2), &b01.mul(b02));
        let tail = sigma(a0, a1, b01).mul(a2).mul(&self.eps(&b02.mul(b12)));
        head.sub(&m0).add(&m1).sub(&tail)
    }

    fn weight_b(&self, e: &[usize; N]) -> usize {
        e.iter().zip(&self.gens).map(|(l, f)| l * f.degree().unwrap_or(1).max(1)).sum()
    }

    /// Monomial basis inputs `(a₀, a₁, a₂; b₀₁, b₀₂, b₁₂)` whose degrees, with
    /// `T_i` weighted by `deg f_i`, add up to at most `bound`.
    fn degree3_inputs(&self, bound: usize) -> Vec<[[usize; N]; 6]> {
        let a_mons: Vec<([usize; N], usize)> = Poly::<F, N>::monomials_up_to(bound).into_iter().map(|e| (e, e.iter().sum())).collect();
        let b_mons: Vec<([usize; N], usize)> = Poly::<F, N>::monomials_up_to(bound)
            .into_iter()
            .map(|e| (e, self.weight_b(&e)))
            .filter(|(_, w)| *w <= bound)
            .collect();
        let mut out = Vec::new();
        let mut cur = [[0usize; N]; 6];
        fn rec<const N: usize>(
            k: usize,
            left: usize,
            a: &[([usize; N], usize)],
            b: &[([usize; N], usize)],
            cur: &mut [[usize; N]; 6],
            out: &mut Vec<[[usize; N]; 6]>,
        ) {
            if k == 6 {
                out.push(*cur);
                return;
            }
            for (e, w) in if k < 3 { a } else { b } {
                if *w <= left {
                    cur[k] = *e;
                    rec(k + 1, left - w, a, b, cur, out);
                }
            }
        }
        rec(0, bound, &a_mons, &b_mons, &mut cur, &mut out);
        out
    }

    /// `δ₂σ = 0` on every monomial input within the degree bound.
    pub fn delta2_vanishes(&self, sigma: impl Fn(&Poly<F, N>, &Poly<F, N>, &Poly<F, N>) -> Poly<F, N>, bound: usize) -> bool {
        let one = self.field.one();
        self.degree3_inputs(bound).into_iter().all(|t| {
            let polys = t.map(|e| Poly::monomial(self.field.clone(), one.clone(), e));
            self.delta2(&sigma, &polys).is_zero()
        })
    }

    /// `δ₂σ_a = 0` within the degree bound.
    pub fn verify_sigma_cocycle(&self, a: &[Poly<F, N>; N], bound: usize) -> bool {
        self.delta2_vanishes(|p, q, l| self.sigma(a, p, q, l), bound)
    }
}

/// A dimension that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// `σ_q(P ⊗ Q ⊗ α(f)) = q P Q α′(f)`
pub fn sigma_eval<F: Field>(f: &Poly<F, 1>, q: &Poly<F, 1>, p: &Poly<F, 1>, q2: &Poly<F, 1>, alpha: &Poly<F, 1>) -> Poly<F, 1> {
    q.mul(p).mul(q2).mul(&alpha.derivative(0).compose(&[f.clone()]))
}

/// `σ_{a,b}(P ⊗ Q ⊗ Λ(f, g)) = P Q (∂Λ/∂f · a + ∂Λ/∂g · b)`
pub fn sigma2_eval<F: Field>(
    fg: (&Poly<F, 2>, &Poly<F, 2>),
    ab: (&Poly<F, 2>, &Poly<F, 2>),
    p: &Poly<F, 2>,
    q: &Poly<F, 2>,
    lambda: &Poly<F, 2>,
) -> Poly<F, 2> {
    let subs = [fg.0.clone(), fg.1.clone()];
    let s = lambda.derivative(0).compose(&subs).mul(ab.0).add(&lambda.derivative(1).compose(&subs).mul(ab.1));
    p.mul(q).mul(&s)
}

pub fn verify_sigma_cocycle<F: Field>(f: &Poly<F, 1>, q: &Poly<F, 1>, bound: usize) -> Result<bool> {
    let t = PolyTriple::new([f.clone()])?;
    if bound < f.degree().unwrap_or(0) {
        return Err(Error::Precondition("degree bound below deg f".into()));
    }
    Ok(t.verify_sigma_cocycle(&[q.clone()], bound))
}

pub fn verify_sigma2_cocycle<F: Field>(
    f: &Poly<F, 2>,
    g: &Poly<F, 2>,
    a: &Poly<F, 2>,
    b: &Poly<F, 2>,
    bound: usize,
) -> Result<bool> {
    let t = PolyTriple::new([f.clone(), g.clone()])?;
    Ok(t.verify_sigma_cocycle(&[a.clone(), b.clone()], bound))
}

/// `dim k[X]/⟨f′⟩`, infinite when `f′ = 0`.
pub fn ker_phi2_dim_1var<F: Field>(f: &Poly<F, 1>) -> Result<Dimension> {
    if f.is_constant() {
        return Err(Error::Precondition("f constant".into()));
    }
    let d = f.derivative(0);
    Ok(match d.degree() {
        None => Dimension::Infinite,
        Some(n) => Dimension::Finite(n),
    })
}

/// `r ∈ ⟨f′⟩` in `k[X]`.
pub fn in_derivative_ideal<F: Field>(f: &Poly<F, 1>, r: &Poly<F, 1>) -> bool {
    let d = f.derivative(0);
    if d.is_zero() {
        return r.is_zero();
    }
    r.div_rem(&d).1.is_zero()
}

/// Whether `σ_r` agrees with `δ₁w` for some linear `w: k[X] → k[X]` on every
/// monomial input `(Xⁱ, Xʲ, Tˡ)` with `i + j + l·deg f ≤ bound`. The values
/// `w(Xᵏ)`, `k ≤ bound`, range over polynomials of degree `≤ bound + deg r`.
pub fn sigma_is_bounded_coboundary<F: Field>(f: &Poly<F, 1>, r: &Poly<F, 1>, bound: usize) -> Result<bool> {
    let t = PolyTriple::new([f.clone()])?;
    let field = t.field().clone();
    let df = f.degree().unwrap();
    let width = bound + r.degree().unwrap_or(0) + 1;
    let unknown = |k: usize, j: usize| k * width + j;
    let mut triplets = Vec::new();
    let mut rhs = Vec::new();
    let mut row = 0usize;
    let mono = |k: usize| Poly::monomial(field.clone(), field.one(), [k]);
    for l in 0..=bound / df {
        for i in 0..=bound - l * df {
            for j in 0..=bound - l * df - i {
                // Terms of δ₁w: multiplier · w(Xᵏ) for each (k, multiplier).
                let fl = f.pow(l);
                let mut lin: Vec<(usize, Poly<F, 1>)> = vec![(j, mono(i).mul(&fl)), (i, mono(j).mul(&fl))];
                for (e, c) in mono(i + j).mul(&fl).terms() {
                    lin.push((e[0], Poly::constant(field.clone(), -c.clone())));
                }
                let target = if l == 0 {
                    Poly::zero(field.clone())
                } else {
                    r.mul(&mono(i + j)).mul(&f.pow(l - 1)).scale(&field.from_i64(l as i64))
                };
                let mut eqs: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
                for (k, m) in &lin {
                    for (e, c) in m.terms() {
                        for jj in 0..width {
                            eqs.entry(e[0] + jj).or_default().push((unknown(*k, jj), c.clone()));
                        }
                    }
                }
                for e in target.terms().keys() {
                    eqs.entry(e[0]).or_default();
                }
                for (e, entries) in eqs {
                    for (col, c) in entries {
                        triplets.push((row, col, c));
                    }
                    rhs.push(target.coeff(&[e]));
                    row += 1;
                }
            }
        }
    }
    let m = Matrix::from_triplets(field, row, (bound + 1) * width, triplets);
    Ok(solve(&m, &rhs).is_some())
}

/// `dim` of the degree-`≤ d` slice of `k[X,Y]²` modulo `J(f,g)·(v, w)` for
/// `deg v, deg w ≤ d − e`, `e` the largest degree of an entry of `J(f,g)`;
/// the image then lies in the slice without truncation.
pub fn jacobian_cokernel_probe<F: Field>(f: &Poly<F, 2>, g: &Poly<F, 2>, d: usize) -> Result<usize> {
    let field = f.field().clone();
    let top = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    if d < top {
        return Err(Error::Precondition(format!("probe degree {d} below max(deg f, deg g) = {top}")));
    }
    let jac = [[f.derivative(0), f.derivative(1)], [g.derivative(0), g.derivative(1)]];
    let e = jac.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0);
    let slice = Poly::<F, 2>::monomials_up_to(d);
    let index: BTreeMap<[usize; 2], usize> = slice.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = slice.len();
    let mut rows = Vec::new();
    if d >= e {
        for m in Poly::<F, 2>::monomials_up_to(d - e) {
            let mono = Poly::monomial(field.clone(), field.one(), m);
            for col in 0..2 {
                let mut v = vec![field.zero(); 2 * n];
                for (comp, jrow) in jac.iter().enumerate() {
                    for (ex, c) in jrow[col].mul(&mono).terms() {
                        v[comp * n + index[ex]] += c.clone();
                    }
                }
                rows.push(v);
            }
        }
    }
    let r = if rows.is_empty() { 0 } else { rank(&Matrix::from_dense(field, 2 * n, &rows)?) };
    Ok(2 * n - r)
}

/// `t`-coefficient of `α(f + t·p)` in `k[X][t]/(t²)`, by Horner's rule on dual numbers.
pub fn deformation_t_term<F: Field>(f: &Poly<F, 1>, p: &Poly<F, 1>, alpha: &Poly<F, 1>) -> Poly<F, 1> {
    let field = f.field().clone();
    let (mut u, mut v) = (Poly::zero(field.clone()), Poly::zero(field.clone()));
    for k in (0..=alpha.degree().unwrap_or(0)).rev() {
        // (u + tv)(f + tp) + c
        let nu = u.mul(f).add(&Poly::constant(field.clone(), alpha.coeff(&[k])));
        let nv = u.mul(p).add(&v.mul(f));
        u = nu;
        v = nv;
    }
    v
}

/// The `t`-linear part of `m_α(P ⊗ Q) = ε_t(α)PQ` for `ε_t(f) = f + tp` equals
/// `σ_p(P ⊗ Q ⊗ α)` on monomials `(Xⁱ, Xʲ, Tˡ)` with `i + j + l·deg f ≤ bound`.
pub fn deformed_epsilon_check<F: Field>(f: &Poly<F, 1>, p: &Poly<F, 1>, bound: usize) -> Result<bool> {
    deformation_matches(f, p, p, bound)
}

/// Compares the deformation by `deform` against `σ_sigma`.
pub fn deformation_matches<F: Field>(f: &Poly<F, 1>, deform: &Poly<F, 1>, sigma: &Poly<F, 1>, bound: usize) -> Result<bool> {
    let df = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::Precondition("f constant".into()))?;
    let field = f.field().clone();
    let mono = |k: usize| Poly::monomial(field.clone(), field.one(), [k]);
    for l in 0..=bound / df {
        let alpha = mono(l);
        let tt = deformation_t_term(f, deform, &alpha);
        for i in 0..=bound - l * df {
            for j in 0..=bound - l * df - i {
                let lhs = tt.mul(&mono(i)).mul(&mono(j));
                if lhs != sigma_eval(f, sigma, &mono(i), &mono(j), &alpha) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn p1(s: &str) -> Poly<Rationals, 1> {
        parse_poly(&Rationals, s).unwrap()
    }

    fn p2(s: &str) -> Poly<Rationals, 2> {
        parse_poly(&Rationals, s).unwrap()
    }

    #[test]
    fn sigma_values() {
        let one = p1("1");
        assert_eq!(sigma_eval(&p1("X^2"), &one, &one, &one, &p1("X")), one);
        assert!(sigma_eval(&p1("X^2"), &p1("0"), &one, &one, &p1("X")).is_zero());
        assert!(sigma_eval(&p1("X^2"), &one, &one, &one, &p1("5")).is_zero());
        assert_eq!(sigma_eval(&p1("X^2"), &p1("X"), &one, &p1("X"), &p1("X^2")), p1("2*X^4"));
    }

    #[test]
    fn sigma_cocycles() {
        assert!(verify_sigma_cocycle(&p1("X^2"), &p1("X"), 6).unwrap());
        assert!(verify_sigma_cocycle(&p1("X^2"), &p1("0"), 6).unwrap());
        assert!(verify_sigma_cocycle(&p1("X^3 + X"), &p1("X^2 - 1"), 7).unwrap());
        let t = PolyTriple::new([p1("X^2")]).unwrap();
        let q = p1("X");
        // Dropping α′ breaks the cocycle condition.
        assert!(!t.delta2_vanishes(|p, r, _| q.mul(p).mul(r), 6));
        let w = |p: &Poly<Rationals, 1>| p.derivative(0).derivative(0).mul(&p1("X")).add(p);
        assert!(t.delta2_vanishes(|a, b, l| t.delta1(w, a, b, l), 5));
        assert!(verify_sigma2_cocycle(&p2("X^2"), &p2("Y^2 + X"), &p2("Y"), &p2("X*Y"), 4).unwrap());
    }

    #[test]
    fn kernel_dims() {
        for n in 2..=6 {
            assert_eq!(ker_phi2_dim_1var(&p1(&format!("X^{n}"))).unwrap(), Dimension::Finite(n - 1));
            assert_eq!(ker_phi2_dim_1var(&p1(&format!("X^{n} + 7"))).unwrap(), Dimension::Finite(n - 1));
        }
        assert_eq!(ker_phi2_dim_1var(&p1("3*X + 1")).unwrap(), Dimension::Finite(0));
        assert!(matches!(ker_phi2_dim_1var(&p1("4")), Err(Error::Precondition(_))));
        for p in [2u64, 3, 5] {
            let fp = PrimeField::new(p).unwrap();
            let f: Poly<PrimeField, 1> = parse_poly(&fp, &format!("X + X^{p}")).unwrap();
            assert_eq!(ker_phi2_dim_1var(&f).unwrap(), Dimension::Finite(0));
            let g: Poly<PrimeField, 1> = parse_poly(&fp, &format!("X^{p}")).unwrap();
            assert_eq!(ker_phi2_dim_1var(&g).unwrap(), Dimension::Infinite);
        }
    }

    #[test]
    fn bounded_coboundaries() {
        let f = p1("X^3");
        for (r, expected) in [("3*X^2", true), ("X^3", true), ("6*X^4 - X^2", true), ("1", false), ("X", false), ("X^2 + X", false)] {
            let r = p1(r);
            assert_eq!(in_derivative_ideal(&f, &r), expected, "{r}");
            assert_eq!(sigma_is_bounded_coboundary(&f, &r, 8).unwrap(), expected, "{r}");
        }
    }

    #[test]
    fn jacobian() {
        for d in 1..=4 {
            assert_eq!(jacobian_cokernel_probe(&p2("X"), &p2("Y"), d).unwrap(), 0);
        }
        for p in [2u64, 3] {
            let fp = PrimeField::new(p).unwrap();
            let f: Poly<PrimeField, 2> = parse_poly(&fp, &format!("X + X^{p}")).unwrap();
            let g: Poly<PrimeField, 2> = parse_poly(&fp, &format!("Y + Y^{p}")).unwrap();
            for d in p as usize..=p as usize + 3 {
                assert_eq!(jacobian_cokernel_probe(&f, &g, d).unwrap(), 0);
            }
        }
        assert_eq!(jacobian_cokernel_probe(&p2("X^2"), &p2("Y^2"), 3).unwrap(), 8);
    }

    #[test]
    fn deformation() {
        assert!(deformed_epsilon_check(&p1("X^2"), &p1("0"), 6).unwrap());
        assert!(deformed_epsilon_check(&p1("X^2"), &p1("1"), 6).unwrap());
        assert!(deformed_epsilon_check(&p1("X^3 - X"), &p1("X^2 + 2"), 7).unwrap());
        assert!(!deformation_matches(&p1("X^2"), &p1("-1"), &p1("1"), 6).unwrap());
    }
}
