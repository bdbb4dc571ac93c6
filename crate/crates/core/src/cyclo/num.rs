use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Float, Rational};

use super::poly::{cyclotomic, euler_phi, gcd, lcm, units};
use super::CycloError;

/// An element of the cyclotomic field Q(zeta_n), stored as its canonical
/// remainder modulo the n-th cyclotomic polynomial: `phi(n)` rational
/// coefficients of `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone, Debug)]
pub struct CycloNum {
    n: u32,
    c: Vec<Rational>,
}

/// A high-precision complex approximation with an absolute error bound on
/// each of the real and imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    pub re: Float,
    pub im: Float,
    pub err: f64,
}

impl ComplexApprox {
    /// Modulus, with an error bound (modulus is 1-Lipschitz in each component pair).
    pub fn abs(&self) -> (Float, f64) {
        let m = Float::with_val(self.re.prec(), self.re.hypot_ref(&self.im));
        (m, self.err * std::f64::consts::SQRT_2 + ulp_bound(self.re.prec()))
    }
}

fn ulp_bound(prec: u32) -> f64 {
    2f64.powi(-(prec as i32) + 4)
}

/// Reduces a power-basis vector (`p[i]` is the coefficient of `zeta_n^i`, any
/// length) to canonical form.
pub(crate) fn reduce_powers(n: u32, mut p: Vec<Rational>) -> Vec<Rational> {
    let nu = n as usize;
    if p.len() > nu {
        let extra = p.split_off(nu);
        for (i, v) in extra.into_iter().enumerate() {
            p[i % nu] += v;
        }
    }
    let phi_poly = cyclotomic(n);
    let phi = phi_poly.len() - 1;
    if p.len() > phi {
        for t in (phi..p.len()).rev() {
            if p[t].cmp0() == Ordering::Equal {
                continue;
            }
            let c = std::mem::take(&mut p[t]);
            for (s, &k) in phi_poly[..phi].iter().enumerate() {
                if k != 0 {
                    p[t - phi + s] -= Rational::from(&c * k);
                }
            }
        }
        p.truncate(phi);
    } else {
        p.resize(phi, Rational::new());
    }
    p
}

impl CycloNum {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CycloNum { n, c: vec![Rational::new(); euler_phi(n)] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(Rational::from(1), n)
    }

    pub fn from_rational(q: Rational, n: u32) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = q;
        z
    }

    pub fn from_int(v: i64, n: u32) -> Self {
        Self::from_rational(Rational::from(v), n)
    }

    /// `zeta_n^k` for any integer k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rational::new(); e + 1];
        p[e] = Rational::from(1);
        Self::from_powers(n, p)
    }

    /// `sum_i p[i] * zeta_n^i`.
    pub fn from_powers(n: u32, p: Vec<Rational>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CycloNum { n, c: reduce_powers(n, p) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Canonical coefficients (length `phi(conductor)`).
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.cmp0() == Ordering::Equal)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.cmp0() == Ordering::Equal) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Re-expresses the number over `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self, CycloError> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(CycloError::NotAMultiple { from: self.n, to: m });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let k = (m / self.n) as usize;
        let mut p = vec![Rational::new(); (self.c.len() - 1) * k + 1];
        for (i, v) in self.c.iter().enumerate() {
            p[i * k] = v.clone();
        }
        Ok(CycloNum { n: m, c: reduce_powers(m, p) })
    }

    pub(crate) fn embed_unchecked(&self, m: u32) -> Self {
        self.embed(m).expect("conductor divides target")
    }

    /// Expresses the number over `Q(zeta_m)` when it lies in that subfield.
    pub fn try_restrict(&self, m: u32) -> Option<Self> {
        if m == 0 {
            return None;
        }
        if m == self.n {
            return Some(self.clone());
        }
        let g = gcd(m as u64, self.n as u64) as u32;
        let x = self.restrict_to_divisor(g)?;
        Some(x.embed_unchecked(m))
    }

    fn restrict_to_divisor(&self, g: u32) -> Option<Self> {
        let phig = euler_phi(g);
        let cols: Vec<Vec<Rational>> =
            (0..phig).map(|i| CycloNum::root_of_unity(g, i as i64).embed_unchecked(self.n).c).collect();
        let x = solve_columns(&cols, &self.c)?;
        Some(CycloNum { n: g, c: x })
    }

    pub fn conj(&self) -> Self {
        self.galois(self.n.saturating_sub(1).max(1))
    }

    /// Image under the automorphism `zeta_n -> zeta_n^u`, gcd(u, n) = 1.
    pub fn galois(&self, u: u32) -> Self {
        let n = self.n as u64;
        let mut p = vec![Rational::new(); self.n as usize];
        for (i, v) in self.c.iter().enumerate() {
            let e = ((i as u64 * u as u64) % n) as usize;
            p[e] += v;
        }
        CycloNum { n: self.n, c: reduce_powers(self.n, p) }
    }

    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Field inverse through the norm map; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = CycloNum::one(self.n);
        for u in units(self.n) {
            if u != 1 {
                others = &others * &self.galois(u);
            }
        }
        let norm = (self * &others).as_rational().expect("field norm is rational");
        Some(others.scale(&Rational::from(norm.recip_ref())))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNum { n: self.n, c: self.c.iter().map(|x| Rational::from(x * q)).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power-basis vector of length `n` over `Q(zeta_n)`.
    pub(crate) fn power_vector(&self, n: u32) -> Vec<Rational> {
        let k = (n / self.n) as usize;
        let mut p = vec![Rational::new(); n as usize];
        for (i, v) in self.c.iter().enumerate() {
            p[i * k] = v.clone();
        }
        p
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.n, other.n);
        (self.embed_unchecked(m), other.embed_unchecked(m))
    }

    /// Certified complex approximation. Each component is within
    /// `2^(8 - bits) * (1 + sum |c_k|)` of the true value.
    pub fn to_complex(&self, bits: u32) -> ComplexApprox {
        let prec = bits.max(16) + 32;
        let mut re = Float::with_val(prec, 0);
        let mut im = Float::with_val(prec, 0);
        let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
        let mut l1 = 0f64;
        for (k, ck) in self.c.iter().enumerate() {
            if ck.cmp0() == Ordering::Equal {
                continue;
            }
            l1 += ck.to_f64().abs();
            let q = Float::with_val(prec, ck);
            if k == 0 {
                re += &q;
                continue;
            }
            let theta = Float::with_val(prec, &two_pi * k as u32) / self.n;
            let (s, c) = theta.sin_cos(Float::new(prec));
            re += Float::with_val(prec, &q * &c);
            im += Float::with_val(prec, &q * &s);
        }
        let err = 2f64.powi(8 - bits as i32) * (1.0 + l1 * (1.0 + 1e-9));
        ComplexApprox { re, im, err }
    }

    /// Fast double-precision value, for numeric work only.
    pub fn to_c64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, ck) in self.c.iter().enumerate() {
            if ck.cmp0() == Ordering::Equal {
                continue;
            }
            let q = ck.to_f64();
            let t = std::f64::consts::TAU * k as f64 / self.n as f64;
            re += q * t.cos();
            im += q * t.sin();
        }
        (re, im)
    }

    /// Exact sign of a real element: zero test first, then certified
    /// evaluation at increasing precision.
    pub fn sign_real(&self) -> Ordering {
        debug_assert!(self.is_real(), "sign of a non-real cyclotomic number");
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 128;
        loop {
            let z = self.to_complex(bits);
            let bound = Float::with_val(64, z.err);
            if Float::with_val(z.re.prec(), z.re.abs_ref()) > bound {
                return z.re.cmp0().expect("finite value");
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign determination did not converge");
        }
    }

    /// Exact comparison of a real element with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let d = self - &CycloNum::from_rational(q.clone(), self.n);
        d.sign_real()
    }

    /// Canonical entry string `c0/d0,c1/d1,...@n` with trailing zeros trimmed.
    pub fn to_entry_string(&self) -> String {
        let mut last = self.c.len();
        while last > 1 && self.c[last - 1].cmp0() == Ordering::Equal {
            last -= 1;
        }
        let body: Vec<String> = self.c[..last].iter().map(|x| x.to_string()).collect();
        format!("{}@{}", body.join(","), self.n)
    }
}

/// Solves `sum_j x_j cols[j] = target` exactly; `None` if inconsistent.
fn solve_columns(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let ncols = cols.len();
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows).find(|&i| a[i][col].cmp0() != Ordering::Equal) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::from(a[r][col].recip_ref());
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && a[i][col].cmp0() != Ordering::Equal {
                let f = a[i][col].clone();
                for j in col..=ncols {
                    let t = Rational::from(&f * &a[r][j]);
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| row[ncols].cmp0() != Ordering::Equal) {
        return None;
    }
    let mut x = vec![Rational::new(); ncols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = self.common(other);
        a.c == b.c
    }
}

impl Eq for CycloNum {}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.n == rhs.n {
            let c = self.c.iter().zip(&rhs.c).map(|(a, b)| Rational::from(a + b)).collect();
            return CycloNum { n: self.n, c };
        }
        let (a, b) = self.common(rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { n: self.n, c: self.c.iter().map(|x| Rational::from(-x)).collect() }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.n != rhs.n {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        let la = self.c.len();
        let lb = rhs.c.len();
        let mut p = vec![Rational::new(); la + lb - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.cmp0() == Ordering::Equal {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if y.cmp0() != Ordering::Equal {
                    p[i + j] += Rational::from(x * y);
                }
            }
        }
        CycloNum { n: self.n, c: reduce_powers(self.n, p) }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: CycloNum) -> CycloNum {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_entry_string())
    }
}

impl FromStr for CycloNum {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, CycloError> {
        let bad = || CycloError::ParseEntry(s.to_string());
        let (body, cond) = s.trim().rsplit_once('@').ok_or_else(bad)?;
        let n: u32 = cond.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let p =
            body.split(',').map(|t| t.trim().parse::<Rational>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
        if p.is_empty() {
            return Err(bad());
        }
        Ok(CycloNum::from_powers(n, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn roots_multiply() {
        let z = CycloNum::root_of_unity(12, 5);
        let w = CycloNum::root_of_unity(12, 9);
        assert_eq!(&z * &w, CycloNum::root_of_unity(12, 2));
        assert_eq!(z.pow(12), CycloNum::one(12));
    }

    #[test]
    fn cross_conductor_equality() {
        // zeta_6 = -zeta_3^2 and zeta_4^2 = -1.
        let z6 = CycloNum::root_of_unity(6, 1);
        let z3 = CycloNum::root_of_unity(3, 2);
        assert_eq!(z6, -&z3);
        assert_eq!(CycloNum::root_of_unity(4, 2), CycloNum::from_int(-1, 1));
    }

    #[test]
    fn sum_of_roots_is_zero() {
        for n in 2..20 {
            let mut s = CycloNum::zero(n);
            for k in 0..n as i64 {
                s = &s + &CycloNum::root_of_unity(n, k);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = CycloNum::from_powers(7, vec![q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, CycloNum::one(7));
        assert!(CycloNum::zero(5).inverse().is_none());
    }

    #[test]
    fn restrict_detects_subfields() {
        // sqrt(-3) = 2 zeta_3 + 1 lives in Q(zeta_3) and Q(zeta_12), not Q(i).
        let s = &CycloNum::root_of_unity(3, 1).scale(&q(2, 1)) + &CycloNum::one(3);
        let big = s.embed(12).unwrap();
        assert_eq!(big.try_restrict(3).unwrap(), s);
        assert_eq!(big.try_restrict(6).unwrap().conductor(), 6);
        assert!(big.try_restrict(4).is_none());
    }

    #[test]
    fn entry_string_round_trip() {
        let a = CycloNum::from_powers(8, vec![q(1, 3), q(0, 1), q(-2, 1)]);
        let s = a.to_entry_string();
        assert_eq!(s, "1/3,0,-2@8");
        assert_eq!(s.parse::<CycloNum>().unwrap().to_entry_string(), s);
        assert_eq!(CycloNum::zero(5).to_entry_string(), "0@5");
        assert!("1,2".parse::<CycloNum>().is_err());
        assert!("1@0".parse::<CycloNum>().is_err());
    }

    #[test]
    fn complex_value_of_root() {
        let z = CycloNum::root_of_unity(8, 1).to_complex(128);
        let h = Float::with_val(200, 2).sqrt() / 2u32;
        assert!(Float::with_val(200, &z.re - &h).abs() < 1e-35);
        assert!(z.err < 1e-30);
    }

    #[test]
    fn sign_and_compare() {
        // |1 + zeta_7 + zeta_7^2|^2 compared against rationals.
        let t = &(&CycloNum::one(7) + &CycloNum::root_of_unity(7, 1)) + &CycloNum::root_of_unity(7, 2);
        let a = t.abs_sq();
        let v = {
            let (re, im) = t.to_c64();
            re * re + im * im
        };
        assert_eq!(a.cmp_rational(&Rational::from(0)), Ordering::Greater);
        let below = Rational::from_f64(v - 1e-6).unwrap();
        let above = Rational::from_f64(v + 1e-6).unwrap();
        assert_eq!(a.cmp_rational(&below), Ordering::Greater);
        assert_eq!(a.cmp_rational(&above), Ordering::Less);
        assert_eq!(CycloNum::from_int(3, 5).cmp_rational(&Rational::from(3)), Ordering::Equal);
    }
}
