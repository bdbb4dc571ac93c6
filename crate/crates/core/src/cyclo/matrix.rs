use std::cmp::Ordering;

use num_rational::Rational64;
use rug::Rational;

use super::num::{reduce_powers, CycloNum};
use super::poly::lcm;
use super::CycloError;
use crate::angle::Spectrum;

/// Square matrix over `Q(zeta_n)`, row-major, all entries sharing the conductor `n`.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    dim: usize,
    n: u32,
    e: Vec<CycloNum>,
}

impl PartialEq for CycloMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.e == other.e
    }
}

impl Eq for CycloMatrix {}

impl CycloMatrix {
    /// Builds a matrix from row-major entries, lifting them to a common conductor.
    pub fn new(dim: usize, entries: Vec<CycloNum>) -> Result<Self, CycloError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(CycloError::Shape { dim, entries: entries.len() });
        }
        let n = entries.iter().fold(1, |acc, x| lcm(acc, x.conductor()));
        let e = entries.into_iter().map(|x| x.embed_unchecked(n)).collect();
        Ok(CycloMatrix { dim, n, e })
    }

    pub fn from_fn(dim: usize, n: u32, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut e = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                e.push(f(i, j).embed_unchecked(n));
            }
        }
        CycloMatrix { dim, n, e }
    }

    pub fn identity(dim: usize, n: u32) -> Self {
        Self::from_fn(dim, n, |i, j| CycloNum::from_int((i == j) as i64, n))
    }

    pub fn scalar(dim: usize, c: &CycloNum) -> Self {
        let n = c.conductor();
        Self::from_fn(dim, n, |i, j| if i == j { c.clone() } else { CycloNum::zero(n) })
    }

    pub fn diagonal(d: &[CycloNum]) -> Self {
        let n = d.iter().fold(1, |acc, x| lcm(acc, x.conductor()));
        Self::from_fn(d.len(), n, |i, j| if i == j { d[i].clone() } else { CycloNum::zero(n) })
    }

    /// Monomial matrix sending `e_j` to `c[j] * e_{perm[j]}`.
    pub fn monomial(perm: &[usize], c: &[CycloNum]) -> Self {
        let n = c.iter().fold(1, |acc, x| lcm(acc, x.conductor()));
        Self::from_fn(perm.len(), n, |i, j| if perm[j] == i { c[j].clone() } else { CycloNum::zero(n) })
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), 1, |i, j| CycloNum::from_int((perm[j] == i) as i64, 1))
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let d = rows.len();
        Self::from_fn(d, 1, |i, j| CycloNum::from_int(rows[i][j], 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.e[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.e
    }

    pub fn embed(&self, m: u32) -> Result<Self, CycloError> {
        let e = self.e.iter().map(|x| x.embed(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(CycloMatrix { dim: self.dim, n: m, e })
    }

    fn lifted(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.n, other.n);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.n != other.n {
            let (a, b) = self.lifted(other);
            return a.mul(&b);
        }
        let d = self.dim;
        let mut e = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = CycloNum::zero(self.n);
                for k in 0..d {
                    let a = &self.e[i * d + k];
                    let b = &other.e[k * d + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                e.push(acc);
            }
        }
        CycloMatrix { dim: d, n: self.n, e }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero(self.n);
        for i in 0..self.dim {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, self.n, |i, j| self.get(j, i).conj())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = self.lifted(other);
        let (p, q) = (a.dim, b.dim);
        Self::from_fn(p * q, a.n, |i, j| a.get(i / q, j / q) * b.get(i % q, j % q))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = self.lifted(other);
        let (p, q) = (a.dim, b.dim);
        Self::from_fn(p + q, a.n, |i, j| {
            if i < p && j < p {
                a.get(i, j).clone()
            } else if i >= p && j >= p {
                b.get(i - p, j - p).clone()
            } else {
                CycloNum::zero(a.n)
            }
        })
    }

    /// Gauss-Jordan elimination; returns (determinant, inverse).
    fn eliminate(&self) -> (CycloNum, Option<Self>) {
        let d = self.dim;
        let n = self.n;
        let mut a = self.e.clone();
        let mut inv = Self::identity(d, n).e;
        let mut det = CycloNum::one(n);
        for col in 0..d {
            let Some(p) = (col..d).find(|&r| !a[r * d + col].is_zero()) else {
                return (CycloNum::zero(n), None);
            };
            if p != col {
                for j in 0..d {
                    a.swap(p * d + j, col * d + j);
                    inv.swap(p * d + j, col * d + j);
                }
                det = -&det;
            }
            let piv = a[col * d + col].clone();
            det = &det * &piv;
            let pinv = piv.inverse().expect("nonzero pivot");
            for j in 0..d {
                a[col * d + j] = &a[col * d + j] * &pinv;
                inv[col * d + j] = &inv[col * d + j] * &pinv;
            }
            for r in 0..d {
                if r == col || a[r * d + col].is_zero() {
                    continue;
                }
                let f = a[r * d + col].clone();
                for j in 0..d {
                    a[r * d + j] = &a[r * d + j] - &(&f * &a[col * d + j]);
                    inv[r * d + j] = &inv[r * d + j] - &(&f * &inv[col * d + j]);
                }
            }
        }
        (det, Some(CycloMatrix { dim: d, n, e: inv }))
    }

    pub fn det(&self) -> CycloNum {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Option<Self> {
        self.eliminate().1
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.as_rational().is_some_and(|q| q == 1)
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// The scalar `c` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        let c = self.get(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let x = self.get(i, j);
                if (i == j && x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c.clone())
    }

    /// The matrix divided by its first nonzero entry in row-major order.
    pub fn projective_key(&self) -> Self {
        let first = self.e.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        let inv = first.inverse().unwrap();
        CycloMatrix { dim: self.dim, n: self.n, e: self.e.iter().map(|x| x * &inv).collect() }
    }

    /// Multiplicative order, searching up to `cap`.
    pub fn order(&self, cap: u64) -> Result<u64, CycloError> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.mul(self);
        }
        Err(CycloError::OrderExceedsCap(cap))
    }

    /// Eigen-angle multiset of a finite-order matrix.
    pub fn spectrum(&self, cap: u64) -> Result<Spectrum, CycloError> {
        let ord = self.order(cap)?;
        self.spectrum_with_order(ord)
    }

    /// Eigen-angle multiset given a multiple of the order. Multiplicities come
    /// from the exact discrete Fourier transform of the power traces.
    pub fn spectrum_with_order(&self, ord: u64) -> Result<Spectrum, CycloError> {
        let big_n = u32::try_from(ord).map_err(|_| CycloError::OrderExceedsCap(ord))?;
        let l = lcm(self.n, big_n);
        let step = (l / big_n) as usize;
        let lu = l as usize;
        let mut traces = Vec::with_capacity(big_n as usize);
        let mut p = Self::identity(self.dim, self.n);
        for _ in 0..big_n {
            traces.push(p.trace().power_vector(l));
            p = p.mul(self);
        }
        if !p.is_identity() {
            return Err(CycloError::NotDiagonalizableConsistency);
        }
        let mut counts = Vec::new();
        for k in 0..big_n as usize {
            let mut acc = vec![Rational::new(); lu];
            for (j, t) in traces.iter().enumerate() {
                let shift = (lu - (k * j * step) % lu) % lu;
                for (e, v) in t.iter().enumerate() {
                    if v.cmp0() != Ordering::Equal {
                        acc[(e + shift) % lu] += v;
                    }
                }
            }
            let s = CycloNum::from_powers(l, reduce_powers(l, acc));
            let m = s.as_rational().ok_or(CycloError::NotDiagonalizableConsistency)? / Rational::from(big_n);
            if !m.is_integer() || m.cmp0() == Ordering::Less {
                return Err(CycloError::NotDiagonalizableConsistency);
            }
            let mult = m.numer().to_usize().unwrap_or(usize::MAX);
            counts.push((k, mult));
        }
        let mut angles = Vec::with_capacity(self.dim);
        for (k, m) in counts {
            for _ in 0..m {
                angles.push(Rational64::new(k as i64, big_n as i64));
            }
        }
        if angles.len() != self.dim {
            return Err(CycloError::NotDiagonalizableConsistency);
        }
        Ok(Spectrum::new(angles).expect("angles lie in [0, 1)"))
    }

    /// Row-major canonical entry strings.
    pub fn to_entry_strings(&self) -> Vec<String> {
        self.e.iter().map(|x| x.to_entry_string()).collect()
    }

    pub fn from_entry_strings(dim: usize, s: &[String]) -> Result<Self, CycloError> {
        let e = s.iter().map(|x| x.parse::<CycloNum>()).collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(n, k)
    }

    #[test]
    fn inverse_and_det() {
        let m =
            CycloMatrix::new(2, vec![z(3, 1), CycloNum::from_int(1, 1), CycloNum::from_int(2, 1), z(4, 1)]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), &(&z(3, 1) * &z(4, 1)) - &CycloNum::from_int(2, 1));
        let sing = CycloMatrix::from_integer_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.det().is_zero());
    }

    #[test]
    fn diagonal_spectrum() {
        let m = CycloMatrix::diagonal(&[z(3, 1), z(4, 3), CycloNum::one(1)]);
        let s = m.spectrum(100).unwrap();
        let want = Spectrum::new(vec![Rational64::new(1, 3), Rational64::new(3, 4), Rational64::new(0, 1)]).unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn permutation_spectrum() {
        // A 3-cycle has eigenvalues 1, w, w^2.
        let m = CycloMatrix::permutation(&[1, 2, 0]);
        assert_eq!(m.order(10).unwrap(), 3);
        let s = m.spectrum(10).unwrap();
        let want = Spectrum::new(vec![Rational64::new(0, 1), Rational64::new(1, 3), Rational64::new(2, 3)]).unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn non_finite_order() {
        let m = CycloMatrix::from_integer_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(matches!(m.order(50), Err(CycloError::OrderExceedsCap(50))));
    }

    #[test]
    fn kron_trace() {
        let a = CycloMatrix::diagonal(&[z(5, 1), z(5, 2)]);
        let b = CycloMatrix::permutation(&[1, 0, 2]);
        assert_eq!(a.kron(&b).trace(), &a.trace() * &b.trace());
    }

    #[test]
    fn projective_key_ignores_scalars() {
        let a = CycloMatrix::new(2, vec![CycloNum::zero(1), z(6, 1), z(3, 1), CycloNum::from_int(2, 1)]).unwrap();
        let b = a.mul(&CycloMatrix::scalar(2, &z(5, 2)));
        assert_ne!(a, b);
        assert_eq!(a.projective_key(), b.projective_key());
    }
}
