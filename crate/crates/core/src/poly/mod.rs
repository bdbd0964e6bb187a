//! Exact polynomials in one or two variables, and the computations on
//! `k[X]` and `k[X, Y]` that reduce to them.

mod lab;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{Field, Scalar};

pub use lab::*;
pub use parse::parse_poly;

/// Variable names used for display and parsing.
pub const VARS: [&str; 2] = ["X", "Y"];

/// A polynomial in `N` variables; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field, const N: usize> {
    field: F,
    terms: BTreeMap<[usize; N], F::Elem>,
}

pub type Poly1<F> = Poly<F, 1>;
pub type Poly2<F> = Poly<F, 2>;

impl<F: Field, const N: usize> Poly<F, N> {
    pub fn zero(field: F) -> Self {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::monomial(field, c, [0; N])
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::constant(field, one)
    }

    pub fn monomial(field: F, c: F::Elem, exps: [usize; N]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { field, terms }
    }

    /// The `i`-th variable.
    pub fn var(field: F, i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        let one = field.one();
        Self::monomial(field, one, e)
    }

    pub fn from_terms(field: F, terms: impl IntoIterator<Item = ([usize; N], F::Elem)>) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<[usize; N], F::Elem> {
        &self.terms
    }

    pub fn coeff(&self, e: &[usize; N]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().map_or(true, |d| d == 0)
    }

    fn add_term(&mut self, e: [usize; N], c: &F::Elem) {
        if c.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let slot = self.terms.entry(e).or_insert(zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { field: self.field.clone(), terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone());
        for (e, x) in &self.terms {
            out.add_term(*e, &(x.clone() * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (x, y) in e.iter_mut().zip(e2) {
                    *x += y;
                }
                out.add_term(e, &(c1.clone() * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.field.clone());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂(variable i)`
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.field.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.add_term(d, &(c.clone() * self.field.from_i64(e[i] as i64)));
        }
        out
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn compose<const M: usize>(&self, subs: &[Poly<F, M>; N]) -> Poly<F, M> {
        let mut out = Poly::zero(self.field.clone());
        let mut powers: Vec<Vec<Poly<F, M>>> = subs.iter().map(|s| vec![Poly::one(self.field.clone()), s.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(self.field.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: usize) -> Self {
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<usize>() <= d).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// All exponent vectors of total degree `≤ d`, graded then lexicographic.
    pub fn monomials_up_to(d: usize) -> Vec<[usize; N]> {
        let mut out = Vec::new();
        for total in 0..=d {
            let mut e = [0; N];
            fill(&mut e, 0, total, &mut out);
        }
        out
    }
}

fn fill<const N: usize>(e: &mut [usize; N], i: usize, left: usize, out: &mut Vec<[usize; N]>) {
    if N == 0 {
        if left == 0 {
            out.push(*e);
        }
        return;
    }
    if i == N - 1 {
        e[i] = left;
        out.push(*e);
        return;
    }
    for k in (0..=left).rev() {
        e[i] = k;
        fill(e, i + 1, left - k, out);
    }
}

impl<F: Field> Poly<F, 1> {
    pub fn x(field: F) -> Self {
        Self::var(field, 0)
    }

    /// Coefficients by exponent, trimmed.
    pub fn dense(&self) -> Vec<F::Elem> {
        let n = self.degree().map_or(0, |d| d + 1);
        (0..n).map(|k| self.coeff(&[k])).collect()
    }

    pub fn from_dense(field: F, coeffs: &[F::Elem]) -> Self {
        Self::from_terms(field, coeffs.iter().enumerate().map(|(k, c)| ([k], c.clone())))
    }

    pub fn leading(&self) -> Option<F::Elem> {
        self.terms.iter().next_back().map(|(_, c)| c.clone())
    }

    /// `(q, r)` with `self = q·d + r`, `deg r < deg d`. Panics on `d = 0`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut q = Self::zero(self.field.clone());
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap() * &inv;
            let t = Self::monomial(self.field.clone(), c, [rd - dd]);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        (q, r)
    }
}

impl<F: Field, const N: usize> fmt::Display for Poly<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { VARS[i].to_string() } else { format!("{}^{p}", VARS[i]) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field, const N: usize> fmt::Debug for Poly<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
