//! Deviation identities, the distance lemmas and the exhaustive junior sweep.

use std::cmp::Ordering;
use std::f64::consts::PI;

use agelab::angle::{frac, rat_f64, rational_sqrt, Spectrum};
use agelab::catalog;
use agelab::cyclo::{CycloMatrix, CycloNum};
use agelab::group::{closure, FiniteMatrixGroup, DEFAULT_CAP};
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::exact::{bounded_multisets, check_junior, farey_angles};
use super::{random_angle, random_spectrum, spectrum_json, MAX_DEN};
use crate::numeric::{conjugated_diagonal, d2_sq, haar_unitary, CMat};
use crate::{run_trials, Tally, TrialConfig};

/// Agreement required between exact and numeric `d2^2`.
const CROSS_CHECK: f64 = 1e-10;

/// `d - |sum exp(2 pi i r)|` in double precision.
pub(crate) fn float_delta(s: &Spectrum) -> f64 {
    let (re, im) = s.angles().iter().fold((0.0, 0.0), |(a, b), &r| {
        let x = 2.0 * PI * rat_f64(r);
        (a + x.cos(), b + x.sin())
    });
    s.dim() as f64 - re.hypot(im)
}

/// Smallest `d1` sum over the candidate scalars, in double precision.
pub(crate) fn float_d1_upper(s: &Spectrum) -> f64 {
    s.candidate_shifts()
        .into_iter()
        .map(|t| s.angles().iter().map(|&r| 2.0 * (PI * rat_f64(frac(r - t))).sin()).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Checks on one spectrum of the sweep.
fn sweep_checks(s: &Spectrum, tol: f64, t: &mut Tally) {
    let delta = float_delta(s);
    let d2 = (2.0 * delta).max(0.0).sqrt();
    if s.distinct_count() >= 2 {
        let left = 4.0 * rat_f64(s.norm_metric_sq_inf()).sqrt();
        let right = 2.0 * PI * rat_f64(s.norm_metric_sq()).sqrt();
        t.check(
            left <= d2 + tol && d2 - left > 1e-12,
            || json!({ "law": "4 |metric| < d2", "g": spectrum_json(s), "left": left, "d2": d2 }),
        );
        t.check(
            d2 <= right + tol,
            || json!({ "law": "d2 <= 2 pi |metric|", "g": spectrum_json(s), "d2": d2, "right": right }),
        );
    }
    check_junior(s, delta, float_d1_upper(s), tol, t);
}

/// Result of the exhaustive sweep over spectra of age at most 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_den: i64,
    pub max_dim: usize,
    pub spectra: usize,
    pub checks: u64,
    pub max_delta: f64,
    pub witnesses: Vec<Value>,
}

/// Every spectrum with denominators at most `max_den`, dimension at most
/// `max_dim` and age at most 1: the distance sandwich and the bounds for
/// elements with `age* <= 1`.
pub fn junior_sweep(max_den: i64, max_dim: usize, tol: f64) -> SweepReport {
    let pool: Vec<Rational64> = farey_angles(max_den).into_iter().filter(|r| !r.is_zero()).collect();
    let supports: Vec<Vec<Rational64>> =
        (0..=max_dim).flat_map(|k| bounded_multisets(&pool, k, Rational64::one())).collect();
    let parts: Vec<(Tally, f64)> = supports
        .par_iter()
        .map(|nz| {
            let mut t = Tally::default();
            let mut max_delta = 0f64;
            for d in nz.len().max(1)..=max_dim {
                let mut v = nz.clone();
                v.resize(d, Rational64::zero());
                let s = Spectrum::new(v).unwrap();
                t.cases += 1;
                max_delta = max_delta.max(float_delta(&s));
                sweep_checks(&s, tol, &mut t);
            }
            (t, max_delta)
        })
        .collect();
    let mut total = Tally::default();
    let mut max_delta = 0f64;
    for (p, m) in parts {
        total.merge(p);
        max_delta = max_delta.max(m);
    }
    SweepReport { max_den, max_dim, spectra: total.cases, checks: total.checks, max_delta, witnesses: total.witnesses }
}

/// Exact `|chi|` when rational, plus a certified approximation.
struct Modulus {
    exact: Option<Rational>,
    approx: Float,
    err: f64,
}

fn modulus(tr: &CycloNum, bits: u32) -> Modulus {
    let exact = tr.abs_sq().as_rational().and_then(|q| rational_sqrt(&q));
    let (approx, err) = tr.to_complex(bits).abs();
    Modulus { exact, approx, err }
}

/// Sign of `sum c_i |chi(x_i)|`: exact when every modulus is rational,
/// otherwise certified, and `None` when the margin is within the error.
fn signed_sum(terms: &[(i64, &Modulus)], bits: u32) -> Option<Ordering> {
    if terms.iter().all(|(_, m)| m.exact.is_some()) {
        let s = terms.iter().fold(Rational::new(), |acc, (c, m)| acc + Rational::from(m.exact.as_ref().unwrap() * *c));
        return Some(s.cmp0());
    }
    let mut s = Float::with_val(bits + 32, 0);
    let mut err = 0.0;
    for (c, m) in terms {
        s += Float::with_val(bits + 32, &m.approx * *c);
        err += m.err * c.unsigned_abs() as f64;
    }
    if s.clone().abs() > err * 2.0 {
        s.cmp0()
    } else {
        None
    }
}

struct CharacterData {
    name: String,
    group: FiniteMatrixGroup,
    moduli: Vec<Modulus>,
    degree: Modulus,
}

fn character_sum_groups(bits: u32) -> Vec<CharacterData> {
    let specs = [
        catalog::deleted_permutation(5, false).unwrap(),
        catalog::binary_icosahedral(),
        catalog::imprimitive_reflection(3, 3, 3).unwrap(),
        catalog::imprimitive_reflection(4, 2, 3).unwrap(),
    ];
    specs
        .into_iter()
        .map(|spec| {
            let group = closure(&spec, DEFAULT_CAP).expect("small catalog group");
            let moduli = group.classes().iter().map(|c| modulus(&group.trace(c.representative), bits)).collect();
            let degree = modulus(&CycloNum::from_int(group.dim() as i64, 1), bits);
            let name = spec.metadata.label.clone().unwrap_or_default();
            CharacterData { name, group, moduli, degree }
        })
        .collect()
}

fn character_sum_trial<R: Rng + ?Sized>(rng: &mut R, data: &CharacterData, bits: u32, t: &mut Tally) {
    let g = &data.group;
    let k = rng.gen_range(2..=4usize);
    let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
    let m = |x: usize| &data.moduli[g.class_of(x)];
    let prod = xs[1..].iter().fold(xs[0], |acc, &x| g.mul(acc, x));
    let kk = k as i64;
    let mut terms: Vec<(i64, &Modulus)> = vec![(kk * kk - 1, &data.degree), (1, m(prod))];
    terms.extend(xs.iter().map(|&x| (-kk, m(x))));
    let w = |law: &str| json!({ "law": law, "group": data.name, "elements": xs });
    match signed_sum(&terms, bits) {
        Some(o) => t.check(o != Ordering::Less, || w("(k^2-1) chi(1) - k sum |chi(g_i)| + |chi(prod)| >= 0")),
        None => t.indeterminate += 1,
    }
    let (a, b) = (xs[0], xs[1]);
    let comm = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
    for x in [a, b] {
        match signed_sum(&[(3, &data.degree), (-4, m(x)), (1, m(comm))], bits) {
            Some(o) => t.check(o != Ordering::Less, || w("3 chi(1) - 4 |chi(x)| + |chi([a, b])| >= 0")),
            None => t.indeterminate += 1,
        }
    }
}

/// Trace of `P D P^-1` for a random monomial `P` over the field of `D`.
fn monomial_conjugate_trace<R: Rng + ?Sized>(rng: &mut R, s: &Spectrum) -> CycloNum {
    let n = s.conductor();
    let d = s.dim();
    let diag: Vec<CycloNum> =
        s.angles().iter().map(|&r| CycloNum::root_of_unity(n, (r * n as i64).to_integer())).collect();
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let coeffs: Vec<CycloNum> = (0..d).map(|_| CycloNum::root_of_unity(n, rng.gen_range(0..n as i64))).collect();
    let p = CycloMatrix::monomial(&perm, &coeffs);
    let x = p.mul(&CycloMatrix::diagonal(&diag)).mul(&p.inverse().expect("monomial matrices are invertible"));
    x.trace()
}

fn random_near_scalar<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Vec<Rational64>, CMat) {
    let width = [Rational64::new(1, 20), Rational64::new(1, 4), Rational64::one()][rng.gen_range(0..3)];
    let base = random_angle(rng, MAX_DEN);
    let angles: Vec<Rational64> = (0..n).map(|_| frac(base + width * random_angle(rng, MAX_DEN))).collect();
    let u = haar_unitary(rng, n);
    let m = conjugated_diagonal(&u, &angles);
    (angles, m)
}

pub(super) fn deviation(config: &TrialConfig) -> Tally {
    let max_dim = config.max_dim.max(1);
    let tol = config.tolerance;
    let bits = config.precision_bits;
    let groups = character_sum_groups(bits);
    let mut total = run_trials(config, |rng, t| {
        let d = rng.gen_range(1..=max_dim);
        let s = random_spectrum(rng, d);
        let w = |law: &str| json!({ "law": law, "g": spectrum_json(&s) });
        let delta = s.delta();
        let d2 = s.d2_squared();

        // d2^2 = 2 Delta, exactly and against a numeric conjugate.
        if let (Some((a2, b2)), Some((a1, b1))) = (d2.surd(), delta.surd()) {
            t.check(a2 == Rational::from(&a1 * 2u32) && b2 == Rational::from(&b1 * 4u32), || {
                w("d2^2 = 2 Delta exactly")
            });
        }
        t.check((d2.to_f64() - 2.0 * delta.to_f64()).abs() <= d2.error_bound() + 2.0 * delta.error_bound(), || {
            w("d2^2 = 2 Delta")
        });
        let m = conjugated_diagonal(&haar_unitary(rng, d), s.angles());
        let numeric = d2_sq(&m);
        t.check((numeric - d2.to_f64()).abs() < CROSS_CHECK, || {
            json!({ "law": "exact d2^2 = numeric d2^2", "g": spectrum_json(&s), "exact": d2.to_f64(), "numeric": numeric })
        });

        // |Tr| is invariant under scalars, conjugation and inverse.
        let abs_sq = s.trace().abs_sq();
        let shift = random_angle(rng, MAX_DEN);
        t.check(s.shifted(shift).trace().abs_sq() == abs_sq, || w("d2 invariant under scalars"));
        t.check(s.inverse().trace().abs_sq() == abs_sq, || w("d2 invariant under inverse"));
        let twelfths = Spectrum::new((0..d).map(|_| Rational64::new(rng.gen_range(0..12), 12)).collect()).unwrap();
        t.check(
            monomial_conjugate_trace(rng, &twelfths).abs_sq() == twelfths.trace().abs_sq(),
            || json!({ "law": "d2 invariant under conjugation", "g": spectrum_json(&twelfths) }),
        );

        // Product and commutator bounds, numeric.
        let k = rng.gen_range(2..=4usize);
        let ts: Vec<(Vec<Rational64>, CMat)> = (0..k).map(|_| random_near_scalar(rng, d)).collect();
        let prod = ts[1..].iter().fold(ts[0].1.clone(), |acc, x| acc * &x.1);
        let sum: f64 = ts.iter().map(|x| d2_sq(&x.1)).sum();
        let lhs = d2_sq(&prod);
        let wn = |law: &str, lhs: f64, rhs: f64| json!({ "law": law, "angles": ts.iter().map(|x| super::angles_json(&x.0)).collect::<Vec<_>>(), "lhs": lhs, "rhs": rhs });
        t.check(lhs <= k as f64 * sum + tol * (d * k * k) as f64, || {
            wn("d2(T1...Tk)^2 <= k sum d2(Ti)^2", lhs, k as f64 * sum)
        });
        let (a, b) = (&ts[0].1, &ts[1].1);
        let comm = a * b * a.adjoint() * b.adjoint();
        let lhs = d2_sq(&comm);
        let rhs = 4.0 * d2_sq(a).min(d2_sq(b));
        t.check(lhs <= rhs + tol * d as f64, || wn("d2([a, b])^2 <= 4 min d2^2", lhs, rhs));

        let data = &groups[rng.gen_range(0..groups.len())];
        character_sum_trial(rng, data, bits, t);
    });
    let sweep = junior_sweep(MAX_DEN, max_dim, tol);
    total.cases += sweep.spectra;
    total.checks += sweep.checks;
    total.witnesses.extend(sweep.witnesses);
    total
}
