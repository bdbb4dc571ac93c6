//! Flat integer encoding of matrices over Q(zeta_n) used by the closure engine.
//!
//! An element is `[den, c(0,0,0), .., c(0,0,phi-1), c(0,1,0), ..]`: a positive
//! common denominator followed by the numerators of every entry's canonical
//! coefficients, gcd-normalized so that equal matrices have equal encodings.

use rug::{Integer, Rational};

use super::GroupError;
use crate::cyclo::{cyclotomic, euler_phi, CycloMatrix, CycloNum};

/// Largest absolute value allowed for a packed numerator or denominator.
/// Keeps every intermediate product inside `i64`.
pub(crate) const COEFF_BOUND: i64 = 1 << 20;

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub dim: usize,
    pub n: u32,
    pub phi: usize,
    pub stride: usize,
    pub cyc: Vec<i64>,
}

impl Layout {
    pub fn new(dim: usize, n: u32) -> Self {
        let phi = euler_phi(n);
        Layout { dim, n, phi, stride: 1 + dim * dim * phi, cyc: cyclotomic(n).to_vec() }
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> usize {
        1 + (i * self.dim + j) * self.phi
    }

    pub fn identity(&self) -> Vec<i32> {
        let mut v = vec![0i32; self.stride];
        v[0] = 1;
        for i in 0..self.dim {
            v[self.entry(i, i)] = 1;
        }
        v
    }

    pub fn pack(&self, m: &CycloMatrix) -> Result<Vec<i32>, GroupError> {
        let m = m.embed(self.n)?;
        let mut den = Integer::from(1);
        for x in m.entries() {
            for c in x.coeffs() {
                den.lcm_mut(c.denom());
            }
        }
        let mut v = vec![0i64; self.stride];
        v[0] = den.to_i64().ok_or(GroupError::CoefficientOverflow)?;
        for (k, x) in m.entries().iter().enumerate() {
            for (t, c) in x.coeffs().iter().enumerate() {
                let num = Integer::from(c.numer() * &den) / c.denom();
                v[1 + k * self.phi + t] = num.to_i64().ok_or(GroupError::CoefficientOverflow)?;
            }
        }
        let mut out = vec![0i32; self.stride];
        normalize(&mut v, &mut out)?;
        Ok(out)
    }

    pub fn unpack(&self, e: &[i32]) -> CycloMatrix {
        let den = e[0] as i64;
        let entries = (0..self.dim * self.dim)
            .map(|k| {
                let c: Vec<Rational> = e[1 + k * self.phi..1 + (k + 1) * self.phi]
                    .iter()
                    .map(|&x| Rational::from((x as i64, den)))
                    .collect();
                CycloNum::from_powers(self.n, c)
            })
            .collect();
        CycloMatrix::new(self.dim, entries).expect("packed shape").embed(self.n).expect("same conductor")
    }

    /// Reduces a length `2 phi - 1` product polynomial modulo the cyclotomic polynomial in place.
    #[inline]
    fn reduce(&self, acc: &mut [i64]) {
        let phi = self.phi;
        for t in (phi..acc.len()).rev() {
            let c = acc[t];
            if c != 0 {
                acc[t] = 0;
                for s in 0..phi {
                    let k = self.cyc[s];
                    if k != 0 {
                        acc[t - phi + s] -= c * k;
                    }
                }
            }
        }
    }

    pub fn is_scalar(&self, e: &[i32]) -> bool {
        let d0 = &e[self.entry(0, 0)..self.entry(0, 0) + self.phi];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let o = self.entry(i, j);
                let x = &e[o..o + self.phi];
                if i == j {
                    if x != d0 {
                        return false;
                    }
                } else if x.iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Trace numerator polynomial (length phi) and the denominator.
    pub fn trace(&self, e: &[i32]) -> (Vec<i64>, i64) {
        let mut t = vec![0i64; self.phi];
        for i in 0..self.dim {
            let o = self.entry(i, i);
            for s in 0..self.phi {
                t[s] += e[o + s] as i64;
            }
        }
        (t, e[0] as i64)
    }

    /// `p * conj(p)` reduced, for an integer polynomial of length phi.
    pub fn abs_sq_poly(&self, p: &[i64]) -> Vec<i128> {
        let n = self.n as usize;
        let mut conj = vec![0i128; n.max(1)];
        for (i, &c) in p.iter().enumerate() {
            conj[(n - i) % n.max(1)] += c as i128;
        }
        let mut prod = vec![0i128; n.max(1) + p.len()];
        for (i, &a) in p.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in conj.iter().enumerate() {
                prod[i + j] += a as i128 * b;
            }
        }
        // Fold exponents modulo n, then reduce modulo the cyclotomic polynomial.
        let mut folded = vec![0i128; n.max(1)];
        for (e, v) in prod.into_iter().enumerate() {
            folded[e % n.max(1)] += v;
        }
        let phi = self.phi;
        for t in (phi..folded.len()).rev() {
            let c = folded[t];
            if c != 0 {
                folded[t] = 0;
                for s in 0..phi {
                    folded[t - phi + s] -= c * self.cyc[s] as i128;
                }
            }
        }
        folded.truncate(phi);
        folded
    }
}

/// Divides out the gcd of denominator and numerators and narrows to `i32`.
pub(crate) fn normalize(v: &mut [i64], out: &mut [i32]) -> Result<(), GroupError> {
    let mut g = v[0].unsigned_abs();
    for &x in &v[1..] {
        if g == 1 {
            break;
        }
        if x != 0 {
            g = gcd(g, x.unsigned_abs());
        }
    }
    let g = g.max(1) as i64;
    for (o, &x) in out.iter_mut().zip(v.iter()) {
        let y = x / g;
        if y.abs() > COEFF_BOUND {
            return Err(GroupError::CoefficientOverflow);
        }
        *o = y as i32;
    }
    Ok(())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A generator stored by its nonzero entries, for fast products.
#[derive(Clone, Debug)]
pub(crate) struct Sparse {
    den: i64,
    rows: Vec<Vec<(usize, Vec<i64>)>>,
    cols: Vec<Vec<(usize, Vec<i64>)>>,
}

impl Sparse {
    pub fn new(l: &Layout, e: &[i32]) -> Self {
        let mut rows = vec![Vec::new(); l.dim];
        let mut cols = vec![Vec::new(); l.dim];
        for i in 0..l.dim {
            for j in 0..l.dim {
                let o = l.entry(i, j);
                let p: Vec<i64> = e[o..o + l.phi].iter().map(|&x| x as i64).collect();
                if p.iter().any(|&x| x != 0) {
                    rows[i].push((j, p.clone()));
                    cols[j].push((i, p));
                }
            }
        }
        Sparse { den: e[0] as i64, rows, cols }
    }
}

/// Scratch space for one product.
pub(crate) struct Scratch {
    acc: Vec<i64>,
    wide: Vec<i64>,
}

impl Scratch {
    pub fn new(l: &Layout) -> Self {
        Scratch { acc: vec![0; 2 * l.phi - 1], wide: vec![0; l.stride] }
    }
}

#[inline]
fn conv_add(acc: &mut [i64], a: &[i64], b: &[i32]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x * y as i64;
        }
    }
}

/// `out = g * x`.
pub(crate) fn left_mul(l: &Layout, g: &Sparse, x: &[i32], out: &mut [i32], s: &mut Scratch) -> Result<(), GroupError> {
    let phi = l.phi;
    s.wide[0] = g.den * x[0] as i64;
    for i in 0..l.dim {
        for j in 0..l.dim {
            s.acc.iter_mut().for_each(|v| *v = 0);
            for (k, p) in &g.rows[i] {
                let o = l.entry(*k, j);
                conv_add(&mut s.acc, p, &x[o..o + phi]);
            }
            l.reduce(&mut s.acc);
            let o = l.entry(i, j);
            s.wide[o..o + phi].copy_from_slice(&s.acc[..phi]);
        }
    }
    normalize(&mut s.wide, out)
}

/// `out = x * g`.
pub(crate) fn right_mul(l: &Layout, x: &[i32], g: &Sparse, out: &mut [i32], s: &mut Scratch) -> Result<(), GroupError> {
    let phi = l.phi;
    s.wide[0] = g.den * x[0] as i64;
    for i in 0..l.dim {
        for j in 0..l.dim {
            s.acc.iter_mut().for_each(|v| *v = 0);
            for (k, p) in &g.cols[j] {
                let o = l.entry(i, *k);
                conv_add(&mut s.acc, p, &x[o..o + phi]);
            }
            l.reduce(&mut s.acc);
            let o = l.entry(i, j);
            s.wide[o..o + phi].copy_from_slice(&s.acc[..phi]);
        }
    }
    normalize(&mut s.wide, out)
}
