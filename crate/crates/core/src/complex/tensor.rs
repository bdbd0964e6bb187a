//! Canonical basis of `A^{⊗n} ⊗ B^{⊗n(n−1)/2}`.
//!
//! A basis element is an upper-triangular "tensor matrix": diagonal entries
//! are `A`-basis indices, strictly upper entries `(i, j)` are `B`-basis
//! indices. Offsets are mixed radix with the diagonal digits most
//! significant, followed by the pair digits in the order
//! `(0,1), (0,2), …, (0,n−1), (1,2), …, (n−2,n−1)`.

use std::fmt;

use crate::error::{Error, Result};

/// Number of strictly upper-triangular positions in an `n × n` matrix.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `(i, j)`, `i < j < n`, in canonical order.
pub fn pair_position(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub diag: Vec<usize>,
    pub pairs: Vec<usize>,
}

impl TensorIndex {
    pub fn degree(&self) -> usize {
        self.diag.len()
    }

    /// `B`-index at `(i, j)`, `i < j`.
    pub fn b(&self, i: usize, j: usize) -> usize {
        self.pairs[pair_position(self.degree(), i, j)]
    }

    pub fn set_b(&mut self, i: usize, j: usize, v: usize) {
        let n = self.degree();
        self.pairs[pair_position(n, i, j)] = v;
    }

    /// The contiguous diagonal block of rows and columns `start..start+len`.
    pub fn block(&self, start: usize, len: usize) -> TensorIndex {
        let diag = self.diag[start..start + len].to_vec();
        let mut pairs = Vec::with_capacity(pair_count(len));
        for i in 0..len {
            for j in i + 1..len {
                pairs.push(self.b(start + i, start + j));
            }
        }
        TensorIndex { diag, pairs }
    }
}

impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.diag.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ";")?;
        for (k, b) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Degree and factor dimensions of a tensor basis. Ordinary cochains use `dim_b = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorShape {
    pub degree: usize,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TensorShape {
    pub fn new(degree: usize, dim_a: usize, dim_b: usize) -> Self {
        TensorShape { degree, dim_a, dim_b }
    }

    pub fn pair_count(&self) -> usize {
        pair_count(self.degree)
    }

    /// Number of basis tensors, saturating at `u128::MAX`.
    pub fn count_u128(&self) -> u128 {
        let mut total: u128 = 1;
        for _ in 0..self.degree {
            total = total.saturating_mul(self.dim_a as u128);
        }
        for _ in 0..self.pair_count() {
            total = total.saturating_mul(self.dim_b as u128);
        }
        total
    }

    /// Number of basis tensors; callers check the size cap first.
    pub fn count(&self) -> usize {
        usize::try_from(self.count_u128()).expect("tensor count fits in usize")
    }

    pub fn encode(&self, t: &TensorIndex) -> Result<usize> {
        if t.diag.len() != self.degree || t.pairs.len() != self.pair_count() {
            return Err(Error::IndexOutOfRange(format!("{t} does not have degree {}", self.degree)));
        }
        if let Some(a) = t.diag.iter().find(|&&a| a >= self.dim_a) {
            return Err(Error::IndexOutOfRange(format!("A-index {a} ≥ dim A = {}", self.dim_a)));
        }
        if let Some(b) = t.pairs.iter().find(|&&b| b >= self.dim_b) {
            return Err(Error::IndexOutOfRange(format!("B-index {b} ≥ dim B = {}", self.dim_b)));
        }
        Ok(self.encode_parts(&t.diag, &t.pairs))
    }

    /// Unchecked encoding of digit slices.
    #[inline]
    pub fn encode_parts(&self, diag: &[usize], pairs: &[usize]) -> usize {
        let mut off = 0usize;
        for &a in diag {
            off = off * self.dim_a + a;
        }
        for &b in pairs {
            off = off * self.dim_b + b;
        }
        off
    }

    pub fn decode(&self, offset: usize) -> Result<TensorIndex> {
        if (offset as u128) >= self.count_u128() {
            return Err(Error::IndexOutOfRange(format!("offset {offset} ≥ {}", self.count_u128())));
        }
        Ok(self.decode_unchecked(offset))
    }

    pub(crate) fn decode_unchecked(&self, mut offset: usize) -> TensorIndex {
        let p = self.pair_count();
        let mut pairs = vec![0; p];
        for k in (0..p).rev() {
            pairs[k] = offset % self.dim_b;
            offset /= self.dim_b;
        }
        let mut diag = vec![0; self.degree];
        for k in (0..self.degree).rev() {
            diag[k] = offset % self.dim_a;
            offset /= self.dim_a;
        }
        TensorIndex { diag, pairs }
    }

    pub fn iter(&self) -> impl Iterator<Item = TensorIndex> + '_ {
        (0..self.count()).map(move |o| self.decode_unchecked(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_offsets() {
        let s1 = TensorShape::new(1, 3, 2);
        assert_eq!(s1.encode(&TensorIndex { diag: vec![0], pairs: vec![] }).unwrap(), 0);
        let s2 = TensorShape::new(2, 2, 2);
        assert_eq!(s2.encode(&TensorIndex { diag: vec![1, 0], pairs: vec![1] }).unwrap(), 5);
        assert_eq!(TensorShape::new(0, 3, 2).count(), 1);
    }

    #[test]
    fn pair_order() {
        let n = 4;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(pair_position(n, i, j), k);
                k += 1;
            }
        }
        assert_eq!(k, pair_count(n));
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 0..=3 {
            for da in 1..=3 {
                for db in 1..=3 {
                    let s = TensorShape::new(n, da, db);
                    assert_eq!(s.count(), da.pow(n as u32) * db.pow(pair_count(n) as u32));
                    for o in 0..s.count() {
                        let t = s.decode(o).unwrap();
                        assert_eq!(s.encode(&t).unwrap(), o);
                    }
                    assert!(s.decode(s.count()).is_err());
                }
            }
        }
    }

    #[test]
    fn out_of_range() {
        let s = TensorShape::new(2, 2, 2);
        assert!(s.encode(&TensorIndex { diag: vec![2, 0], pairs: vec![0] }).is_err());
        assert!(s.encode(&TensorIndex { diag: vec![0, 0], pairs: vec![2] }).is_err());
        assert!(s.encode(&TensorIndex { diag: vec![0], pairs: vec![] }).is_err());
    }

    #[test]
    fn blocks() {
        let s = TensorShape::new(3, 3, 3);
        let t = TensorIndex { diag: vec![0, 1, 2], pairs: vec![0, 1, 2] };
        assert_eq!(t.b(1, 2), 2);
        let inner = t.block(1, 2);
        assert_eq!(inner, TensorIndex { diag: vec![1, 2], pairs: vec![2] });
        assert_eq!(s.encode(&t).unwrap(), s.encode_parts(&t.diag, &t.pairs));
    }
}
