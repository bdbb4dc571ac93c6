//! Eigen-angle spectra of finite-order matrices and the quantities built
//! from them: age, age*, the angle norm and the trace deviation.
//!
//! An eigenvalue `exp(2 pi i r)` is recorded as the rational angle `r` in `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rug::{Float, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::CycloNum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AngleError {
    #[error("a spectrum needs at least one angle")]
    Empty,
    #[error("angle {0} lies outside [0, 1)")]
    OutOfRange(String),
    #[error("malformed angle `{0}`")]
    Parse(String),
    #[error("spectra of dimensions {0} and {1} cannot be paired")]
    DimensionMismatch(usize, usize),
}

/// Sorted multiset of rational angles in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    angles: Vec<Rational64>,
}

/// Minimum age over scalar multiples, with the minimizing shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgeStar {
    pub value: Rational64,
    pub shift: Rational64,
}

/// Reduces any rational into `[0, 1)`.
pub fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

pub fn parse_angle(s: &str) -> Result<Rational64, AngleError> {
    let t = s.trim();
    t.parse::<Rational64>().map_err(|_| AngleError::Parse(t.to_string()))
}

impl Spectrum {
    pub fn new(mut angles: Vec<Rational64>) -> Result<Self, AngleError> {
        if angles.is_empty() {
            return Err(AngleError::Empty);
        }
        if let Some(bad) = angles.iter().find(|r| r.is_negative() || **r >= Rational64::one()) {
            return Err(AngleError::OutOfRange(bad.to_string()));
        }
        angles.sort();
        Ok(Spectrum { angles })
    }

    /// Builds a spectrum from arbitrary rationals, reducing each modulo 1.
    pub fn from_reduced(angles: impl IntoIterator<Item = Rational64>) -> Result<Self, AngleError> {
        Self::new(angles.into_iter().map(frac).collect())
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_pairs(p: &[(i64, i64)]) -> Result<Self, AngleError> {
        Self::from_reduced(p.iter().map(|&(a, b)| Rational64::new(a, b)))
    }

    /// Parses a JSON array of angle strings such as `["1/3","0"]`.
    pub fn parse_json(s: &str) -> Result<Self, AngleError> {
        let v: Vec<String> = serde_json::from_str(s).map_err(|_| AngleError::Parse(s.to_string()))?;
        Self::from_strings(&v)
    }

    pub fn from_strings<S: AsRef<str>>(v: &[S]) -> Result<Self, AngleError> {
        Self::new(v.iter().map(|x| parse_angle(x.as_ref())).collect::<Result<_, _>>()?)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.angles.iter().map(|r| r.to_string()).collect()
    }

    pub fn angles(&self) -> &[Rational64] {
        &self.angles
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn age(&self) -> Rational64 {
        self.angles.iter().copied().sum()
    }

    pub fn shifted(&self, t: Rational64) -> Spectrum {
        Spectrum::from_reduced(self.angles.iter().map(|&r| r - t)).unwrap()
    }

    /// Shifts that can minimize the age: 0 and each distinct angle, ascending.
    pub fn candidate_shifts(&self) -> Vec<Rational64> {
        let mut c = vec![Rational64::zero()];
        for &r in &self.angles {
            if c.last() != Some(&r) {
                c.push(r);
            }
        }
        c
    }

    /// `age(exp(-2 pi i t) g)` computed without building the shifted spectrum.
    pub fn shifted_age(&self, t: Rational64) -> Rational64 {
        self.angles.iter().map(|&r| frac(r - t)).sum()
    }

    /// Minimum age over all scalar multiples; ties go to the smallest shift.
    pub fn age_star(&self) -> AgeStar {
        let mut best = AgeStar { value: self.age(), shift: Rational64::zero() };
        for t in self.candidate_shifts().into_iter().skip(1) {
            let a = self.shifted_age(t);
            if a < best.value {
                best = AgeStar { value: a, shift: t };
            }
        }
        best
    }

    /// Every candidate shift attaining age*.
    pub fn minimizing_shifts(&self) -> Vec<Rational64> {
        let m = self.age_star().value;
        self.candidate_shifts().into_iter().filter(|&t| self.shifted_age(t) == m).collect()
    }

    pub fn inverse(&self) -> Spectrum {
        Spectrum::from_reduced(self.angles.iter().map(|&r| -r)).unwrap()
    }

    pub fn direct_sum(&self, other: &Spectrum) -> Spectrum {
        let mut v = self.angles.clone();
        v.extend_from_slice(&other.angles);
        Spectrum::new(v).unwrap()
    }

    pub fn tensor(&self, other: &Spectrum) -> Spectrum {
        Spectrum::from_reduced(self.angles.iter().flat_map(|&a| other.angles.iter().map(move |&b| a + b))).unwrap()
    }

    /// Image under `zeta -> zeta^u` on eigenvalues.
    pub fn galois(&self, u: i64) -> Spectrum {
        Spectrum::from_reduced(self.angles.iter().map(|&r| r * u)).unwrap()
    }

    pub fn is_scalar(&self) -> bool {
        self.angles.first() == self.angles.last()
    }

    pub fn nonzero_count(&self) -> usize {
        self.angles.iter().filter(|r| !r.is_zero()).count()
    }

    pub fn distinct_count(&self) -> usize {
        self.candidate_shifts().len() - usize::from(!self.angles[0].is_zero())
    }

    /// Order of the element: lcm of the angle denominators.
    pub fn order(&self) -> u64 {
        self.angles.iter().fold(1i64, |acc, r| acc.lcm(r.denom())) as u64
    }

    /// Order modulo scalars: lcm of the denominators of the angle differences.
    pub fn projective_order(&self) -> u64 {
        let r0 = self.angles[0];
        self.angles.iter().fold(1i64, |acc, &r| acc.lcm(frac(r - r0).denom())) as u64
    }

    /// `sum min(r, 1 - r)^2`.
    pub fn norm_metric_sq(&self) -> Rational64 {
        self.angles
            .iter()
            .map(|&r| {
                let m = r.min(Rational64::one() - r);
                m * m
            })
            .sum()
    }

    /// Exact infimum of `norm_metric_sq` over all (not only root-of-unity) scalar multiples.
    pub fn norm_metric_sq_inf(&self) -> Rational64 {
        let half = Rational64::new(1, 2);
        let mut bp: Vec<Rational64> = self.angles.iter().map(|&r| frac(r + half)).collect();
        bp.sort();
        bp.dedup();
        let mut best: Option<Rational64> = None;
        for i in 0..bp.len() {
            let lo = bp[i];
            let hi = if i + 1 < bp.len() { bp[i + 1] } else { bp[0] + 1 };
            let mid = (lo + hi) / 2;
            let offs: Vec<Rational64> = self.angles.iter().map(|&r| r - (r - mid).round()).collect();
            let mean = offs.iter().copied().sum::<Rational64>() / offs.len() as i64;
            let t = mean.max(lo).min(hi);
            let v: Rational64 = offs.iter().map(|&o| (o - t) * (o - t)).sum();
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best.unwrap()
    }

    /// Smallest conductor holding all eigenvalues.
    pub fn conductor(&self) -> u32 {
        u32::try_from(self.order()).expect("spectrum order fits u32")
    }

    pub fn trace(&self) -> CycloNum {
        let n = self.conductor();
        let mut p = vec![Rational::new(); n as usize];
        for r in &self.angles {
            let k = (r * n as i64).to_integer() as usize;
            p[k] += 1u32;
        }
        CycloNum::from_powers(n, p)
    }

    /// Trace deviation `dim - |Tr|`.
    pub fn delta(&self) -> DeviationValue {
        DeviationValue::from_trace(self.dim(), &self.trace(), 1, crate::precision_bits())
    }

    /// Squared distance to the scalars, `2 * delta`.
    pub fn d2_squared(&self) -> DeviationValue {
        DeviationValue::from_trace(self.dim(), &self.trace(), 2, crate::precision_bits())
    }

    /// Lower and upper bounds on the operator-norm style distance `d1`.
    pub fn d1_bounds(&self) -> (f64, f64) {
        let lower = self.delta().to_f64();
        let upper = self
            .candidate_shifts()
            .into_iter()
            .map(|t| {
                self.angles.iter().map(|&r| 2.0 * (std::f64::consts::PI * rat_f64(frac(r - t))).sin()).sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        (lower, upper)
    }

    /// Length (in turns) of the shortest arc containing every eigenvalue.
    pub fn shortest_arc(&self) -> Rational64 {
        let mut d = self.angles.clone();
        d.dedup();
        if d.len() == 1 {
            return Rational64::zero();
        }
        let mut gap = d[0] + 1 - d[d.len() - 1];
        for w in d.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        Rational64::one() - gap
    }
}

/// Pairs the angles of two commuting, simultaneously diagonalized matrices.
pub fn commuting_product(a: &[Rational64], b: &[Rational64]) -> Result<Spectrum, AngleError> {
    if a.len() != b.len() {
        return Err(AngleError::DimensionMismatch(a.len(), b.len()));
    }
    Spectrum::from_reduced(a.iter().zip(b).map(|(x, y)| x + y))
}

pub fn rat_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Spectrum::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// A value of the form `a - sqrt(b)` arising from a trace: `a` is rational and
/// `b` is `|Tr|^2` scaled, exact when `|Tr|^2` is rational. Always carries a
/// certified high-precision approximation.
#[derive(Clone, Debug)]
pub struct DeviationValue {
    a: Rational,
    b: Option<Rational>,
    approx: Float,
    err: f64,
}

impl DeviationValue {
    /// `factor * (dim - |trace|)`.
    pub fn from_trace(dim: usize, trace: &CycloNum, factor: u32, bits: u32) -> Self {
        let a = Rational::from(dim * factor as usize);
        let b = trace.abs_sq().as_rational().map(|q| q * (factor * factor));
        let z = trace.to_complex(bits);
        let (m, merr) = z.abs();
        let approx = Float::with_val(m.prec(), &a - Float::with_val(m.prec(), &m * factor));
        let err = factor as f64 * merr + 2f64.powi(-(m.prec() as i32) + 4) * (1.0 + dim as f64 * factor as f64);
        DeviationValue { a, b, approx, err }
    }

    /// Exact `(a, b)` with value `a - sqrt(b)`, when available.
    pub fn surd(&self) -> Option<(Rational, Rational)> {
        self.b.clone().map(|b| (self.a.clone(), b))
    }

    /// The exact value when it is rational.
    pub fn exact_rational(&self) -> Option<Rational> {
        let b = self.b.as_ref()?;
        let r = rational_sqrt(b)?;
        Some(Rational::from(&self.a - &r))
    }

    pub fn approx(&self) -> &Float {
        &self.approx
    }

    pub fn error_bound(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> f64 {
        self.approx.to_f64()
    }

    /// Exact equality with `a' - sqrt(b')`.
    pub fn equals_surd(&self, a: &Rational, b: &Rational) -> bool {
        match &self.b {
            Some(sb) => {
                if sb == b && self.a == *a {
                    return true;
                }
                // a - sqrt(b) = a' - sqrt(b') may hold with different
                // presentations only if both roots are rational.
                match (rational_sqrt(sb), rational_sqrt(b)) {
                    (Some(x), Some(y)) => Rational::from(&self.a - &x) == Rational::from(a - &y),
                    _ => false,
                }
            }
            None => false,
        }
    }
}

impl fmt::Display for DeviationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.exact_rational() {
            return write!(f, "{q}");
        }
        if let Some((a, b)) = self.surd() {
            return write!(f, "{a} - sqrt({b})");
        }
        write!(f, "{}", crate::fmt_sig(self.to_f64(), 12))
    }
}

/// Square root of a nonnegative rational when it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.cmp0() == Ordering::Less {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    if !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[(i64, i64)]) -> Spectrum {
        Spectrum::from_pairs(p).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn age_star_examples() {
        let s = sp(&[(1, 3), (2, 3), (0, 1), (0, 1)]);
        assert_eq!(s.age(), r(1, 1));
        assert_eq!(s.age_star().value, r(1, 1));
        let t = sp(&[(2, 3), (2, 3), (2, 3), (0, 1)]);
        assert_eq!(t.age_star(), AgeStar { value: r(1, 3), shift: r(2, 3) });
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Spectrum::new(vec![]), Err(AngleError::Empty));
        assert!(matches!(Spectrum::new(vec![r(1, 1)]), Err(AngleError::OutOfRange(_))));
        assert!(Spectrum::parse_json("[\"1/x\"]").is_err());
        assert_eq!(Spectrum::parse_json("[\"1/3\",\"0\"]").unwrap(), sp(&[(0, 1), (1, 3)]));
    }

    #[test]
    fn delta_of_order_three_reflection() {
        // |3 + w|^2 = 7
        let d = sp(&[(1, 3), (0, 1), (0, 1), (0, 1)]).delta();
        let (a, b) = d.surd().unwrap();
        assert_eq!((a, b), (Rational::from(4), Rational::from(7)));
        assert!(d.exact_rational().is_none());
        assert!((d.to_f64() - (4.0 - 7f64.sqrt())).abs() < 1e-15);
        assert!(d.error_bound() <= 1e-30);
    }

    #[test]
    fn delta_of_bireflection_is_rational() {
        let d = sp(&[(1, 2), (1, 2), (0, 1), (0, 1)]).delta();
        assert_eq!(d.exact_rational().unwrap(), 4);
        let d2 = sp(&[(1, 2), (1, 2), (0, 1), (0, 1)]).d2_squared();
        assert_eq!(d2.exact_rational().unwrap(), 8);
    }

    #[test]
    fn arcs() {
        assert_eq!(sp(&[(0, 1), (1, 4)]).shortest_arc(), r(1, 4));
        assert_eq!(sp(&[(0, 1), (1, 3), (2, 3)]).shortest_arc(), r(2, 3));
        assert_eq!(sp(&[(1, 5), (1, 5)]).shortest_arc(), r(0, 1));
        assert_eq!(sp(&[(1, 10), (9, 10)]).shortest_arc(), r(1, 5));
    }

    #[test]
    fn metric_infimum_below_candidates() {
        let s = sp(&[(0, 1), (1, 4), (1, 2)]);
        // Candidates give 1/16 + 1/4 = 5/16; the continuous minimum at t = 1/4 gives 1/8.
        assert_eq!(s.norm_metric_sq(), r(5, 16));
        assert_eq!(s.norm_metric_sq_inf(), r(1, 8));
        assert_eq!(sp(&[(1, 3), (1, 3)]).norm_metric_sq_inf(), r(0, 1));
    }

    #[test]
    fn orders() {
        let s = sp(&[(1, 6), (2, 3)]);
        assert_eq!(s.order(), 6);
        assert_eq!(s.projective_order(), 2);
        assert_eq!(sp(&[(1, 4), (1, 4)]).projective_order(), 1);
    }
}
