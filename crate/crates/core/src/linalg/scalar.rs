//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! Elements carry enough information to do arithmetic on their own
//! (a prime-field element remembers its modulus), while constants are
//! produced by the [`Field`] value that owns them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic every coefficient type supports.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b;
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a.clone() * b;
    }
}

/// Serializable description of a field, as it appears in spec files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl FieldDescriptor {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        if upper == "Q" || upper == "QQ" || upper == "RATIONAL" || upper == "RATIONALS" {
            return Ok(FieldDescriptor::Rational);
        }
        let inner = upper
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| upper.strip_prefix("GF"))
            .or_else(|| upper.strip_prefix("F_"))
            .or_else(|| upper.strip_prefix("Z/"));
        match inner.map(|x| x.trim().parse::<u64>()) {
            Some(Ok(p)) => {
                if is_prime(p) {
                    Ok(FieldDescriptor::Prime(p))
                } else {
                    Err(Error::Parse(format!("{p} is not a prime")))
                }
            }
            _ => Err(Error::Parse(format!("unknown field descriptor {s:?} (expected Q or GF(p))"))),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field of exact scalars.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of `num/den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;

    /// Parses `"p"`, `"-p"` or `"p/q"`.
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let (num, den) = parse_ratio(s)?;
        self.from_ratio(&num, &den)
            .ok_or_else(|| Error::Parse(format!("{s:?} has a denominator that vanishes in {}", self.descriptor())))
    }

    /// Row echelon form of a dense matrix: returns `(pivot column, row)` pairs
    /// with strictly increasing pivots. Rows need not be normalized.
    fn dense_echelon(&self, rows: Vec<Vec<Self::Elem>>, ncols: usize) -> Vec<(usize, Vec<Self::Elem>)> {
        gauss_dense(self, rows, ncols)
    }
}

pub(crate) fn parse_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok((num, den))
}

fn gauss_dense<F: Field + ?Sized>(
    _field: &F,
    mut rows: Vec<Vec<F::Elem>>,
    ncols: usize,
) -> Vec<(usize, Vec<F::Elem>)> {
    let mut out = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].inv().expect("nonzero pivot");
        for x in rows[top].iter_mut() {
            *x *= &inv;
        }
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot = &head[top];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !pivot[c].is_zero() {
                    row[c].sub_mul(&factor, &pivot[c]);
                }
            }
        }
        top += 1;
    }
    for row in rows.into_iter().take(top) {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("echelon row nonzero");
        out.push((pivot, row));
    }
    out
}

// ---------------------------------------------------------------------------
// Rationals

/// An exact rational number. Values whose numerator and denominator fit in
/// an `i64` are kept inline; everything else spills into a `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// numerator, denominator > 0, coprime
    Small(i64, i64),
    /// never representable as `Small`
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominators.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Self::from_big(BigRational::new(num, den))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let s = *a as i128 + *c as i128;
                    return match i64::try_from(s) {
                        Ok(s) => Rational(Repr::Small(s, 1)),
                        Err(_) => Self::from_i128(s, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Self::from_i128(*a as i128 * *c as i128, 1);
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_impl(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(r) => Self::from_big(-r.clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($Ty:ty, $Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident, $imp:expr) => {
        impl $Trait<&$Ty> for $Ty {
            type Output = $Ty;
            fn $method(self, rhs: &$Ty) -> $Ty {
                $imp(&self, rhs)
            }
        }
        impl $Trait<$Ty> for $Ty {
            type Output = $Ty;
            fn $method(self, rhs: $Ty) -> $Ty {
                $imp(&self, &rhs)
            }
        }
        impl $Trait<&$Ty> for &$Ty {
            type Output = $Ty;
            fn $method(self, rhs: &$Ty) -> $Ty {
                $imp(self, rhs)
            }
        }
        impl $AssignTrait<&$Ty> for $Ty {
            fn $assign(&mut self, rhs: &$Ty) {
                *self = $imp(&*self, rhs);
            }
        }
        impl $AssignTrait<$Ty> for $Ty {
            fn $assign(&mut self, rhs: $Ty) {
                *self = $imp(&*self, &rhs);
            }
        }
    };
}

forward_binop!(Rational, Add, add, AddAssign, add_assign, |a: &Rational, b: &Rational| a.add_impl(b));
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign, |a: &Rational, b: &Rational| a
    .add_impl(&b.neg_impl()));
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign, |a: &Rational, b: &Rational| a.mul_impl(b));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(r) => Some(Self::from_big(r.recip())),
        }
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_impl(&a.mul_impl(b));
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_impl(&a.mul_impl(b).neg_impl());
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Rational> {
        if den.is_zero() {
            None
        } else {
            Some(Rational::from_bigints(num.clone(), den.clone()))
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn dense_echelon(&self, rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<(usize, Vec<Rational>)> {
        bareiss(rows, ncols)
    }
}

/// Fraction-free (Bareiss) elimination. Each row is first scaled to a
/// primitive integer vector; all intermediate divisions are exact.
fn bareiss(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<(usize, Vec<Rational>)> {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut top = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if top == nrows {
            break;
        }
        let Some(p) = (top..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let (head, tail) = m.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for c in col..ncols {
                let v = &pivot * &row[c] - &lead * &pivot_row[c];
                row[c] = v / &prev;
            }
            // Columns left of `col` are already zero below the pivot.
        }
        prev = pivot;
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    m.into_iter()
        .zip(pivots)
        .map(|(row, p)| (p, row.into_iter().map(|x| Rational::from_bigints(x, BigInt::one())).collect()))
        .collect()
}

// ---------------------------------------------------------------------------
// Prime fields

/// Residue modulo a prime `p < 2^62`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

fn fp_add(a: &Fp, b: &Fp) -> Fp {
    debug_assert_eq!(a.p, b.p, "mixed prime fields");
    let s = a.value + b.value;
    Fp { value: if s >= a.p { s - a.p } else { s }, p: a.p }
}

fn fp_sub(a: &Fp, b: &Fp) -> Fp {
    debug_assert_eq!(a.p, b.p, "mixed prime fields");
    let v = if a.value >= b.value { a.value - b.value } else { a.value + a.p - b.value };
    Fp { value: v, p: a.p }
}

fn fp_mul(a: &Fp, b: &Fp) -> Fp {
    debug_assert_eq!(a.p, b.p, "mixed prime fields");
    Fp { value: ((a.value as u128 * b.value as u128) % a.p as u128) as u64, p: a.p }
}

forward_binop!(Fp, Add, add, AddAssign, add_assign, fp_add);
forward_binop!(Fp, Sub, sub, SubAssign, sub_assign, fp_sub);
forward_binop!(Fp, Mul, mul, MulAssign, mul_assign, fp_mul);

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl Neg for &Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        -*self
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a supported prime (need prime p < 2^62)")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp { value: 0, p: self.p }
    }

    fn one(&self) -> Fp {
        Fp { value: 1 % self.p, p: self.p }
    }

    fn from_i64(&self, n: i64) -> Fp {
        let r = n.rem_euclid(self.p as i64) as u64;
        Fp { value: r, p: self.p }
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Fp> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| Fp { value: x.mod_floor(&p).to_u64().expect("residue fits"), p: self.p };
        let d = reduce(den);
        d.inv().map(|dinv| reduce(num) * dinv)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduces a rational modulo `p`, if its denominator is a unit there.
pub fn reduce_mod_p(x: &Rational, field: &PrimeField) -> Option<Fp> {
    field.from_ratio(&x.numer(), &x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_normalizes() {
        let x = Rational::new(6, -4);
        assert_eq!(x, Rational::new(-3, 2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert!(Rational::new(0, -7).is_zero());
    }

    #[test]
    fn rational_spills_and_returns() {
        let big = Rational::from_integer(i64::MAX) + Rational::from_integer(i64::MAX);
        assert!(matches!(big.0, Repr::Big(_)));
        let back = big - Rational::from_integer(i64::MAX);
        assert!(matches!(back.0, Repr::Small(_, _)));
        assert_eq!(back, Rational::from_integer(i64::MAX));
        assert_eq!(-Rational::from_integer(i64::MIN), Rational::from_big(BigRational::from_integer(BigInt::from(i64::MIN)) * BigRational::from_integer(BigInt::from(-1))));
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!(f.from_i64(-1).value(), 6);
        assert_eq!(f.parse("1/2").unwrap().value(), 4);
        assert!(f.parse("1/7").is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(FieldDescriptor::parse("Q").unwrap(), FieldDescriptor::Rational);
        assert_eq!(FieldDescriptor::parse("GF(5)").unwrap(), FieldDescriptor::Prime(5));
        assert!(FieldDescriptor::parse("GF(6)").is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    fn big(x: &Rational) -> BigRational {
        x.to_big()
    }

    proptest! {
        #[test]
        fn rational_matches_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            prop_assert_eq!(big(&(x.clone() + &y)), big(&x) + big(&y));
            prop_assert_eq!(big(&(x.clone() - &y)), big(&x) - big(&y));
            prop_assert_eq!(big(&(x.clone() * &y)), big(&x) * big(&y));
            if !y.is_zero() {
                prop_assert_eq!(big(&(x.clone() * y.inv().unwrap())), big(&x) / big(&y));
            }
        }

        #[test]
        fn reduction_mod_p_is_a_homomorphism(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let f = PrimeField::new(1_000_003).unwrap();
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let rx = reduce_mod_p(&x, &f).unwrap();
            let ry = reduce_mod_p(&y, &f).unwrap();
            prop_assert_eq!(reduce_mod_p(&(x.clone() * &y), &f).unwrap(), rx * ry);
            prop_assert_eq!(reduce_mod_p(&(x + y), &f).unwrap(), rx + ry);
        }
    }
}
