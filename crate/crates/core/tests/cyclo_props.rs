use std::f64::consts::PI;

use agelab::angle::{rat_f64, Spectrum};
use agelab::cyclo::{cyclotomic, euler_phi, CycloMatrix, CycloNum};
use num_rational::Rational64;
use proptest::prelude::*;
use rug::Rational;

const CONDUCTORS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 12, 15];

fn num_strategy() -> impl Strategy<Value = CycloNum> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| {
        prop::collection::vec((-5i64..=5, 1i64..=4), n as usize)
            .prop_map(move |v| CycloNum::from_powers(n, v.into_iter().map(|(p, q)| Rational::from((p, q))).collect()))
    })
}

/// The number as a complex float, straight from its power-basis coefficients.
fn float_value(x: &CycloNum) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
        let t = 2.0 * PI * i as f64 / n;
        let c = c.to_f64();
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

#[test]
fn cyclotomic_polynomial_degrees() {
    for n in 1..=60u32 {
        let totient = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
        assert_eq!(euler_phi(n) as usize, totient);
        assert_eq!(cyclotomic(n).len(), totient + 1);
    }
}

#[test]
fn known_absolute_values() {
    // |3 + zeta_3|^2 = 7, |1 + zeta_5 + zeta_5^4|^2 = golden ratio squared.
    let t = &CycloNum::from_int(3, 3) + &CycloNum::root_of_unity(3, 1);
    assert_eq!(t.abs_sq().as_rational(), Some(Rational::from(7)));
    let g = &(&CycloNum::one(5) + &CycloNum::root_of_unity(5, 1)) + &CycloNum::root_of_unity(5, 4);
    assert!(g.abs_sq().as_rational().is_none());
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((float_value(&g.abs_sq()).0 - phi * phi).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_operations_agree_with_floats(a in num_strategy(), b in num_strategy()) {
        let (x, y) = (float_value(&a), float_value(&b));
        let s = &a + &b;
        let p = &a * &b;
        let s_val = float_value(&s);
        let p_val = float_value(&p);
        prop_assert!(close(s_val, (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(p_val, (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
        prop_assert_eq!(&(&s - &b), &a);
    }

    #[test]
    fn canonical_form_has_phi_coefficients(a in num_strategy()) {
        prop_assert_eq!(a.coeffs().len(), euler_phi(a.conductor()) as usize);
    }

    #[test]
    fn inverse_and_conjugate(a in num_strategy()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, CycloNum::one(a.conductor()));
        let v = float_value(&a);
        prop_assert!(close(float_value(&a.conj()), (v.0, -v.1)));
        let sq = a.abs_sq();
        prop_assert!(sq.is_real());
        prop_assert!(close(float_value(&sq), (v.0 * v.0 + v.1 * v.1, 0.0)));
    }

    #[test]
    fn embedding_round_trip(a in num_strategy(), k in 1u32..=4) {
        let m = a.conductor() * k;
        let e = a.embed(m).unwrap();
        prop_assert_eq!(&e, &a);
        prop_assert!(close(float_value(&e), float_value(&a)));
        let back = e.try_restrict(a.conductor()).unwrap();
        prop_assert_eq!(back.coeffs(), a.coeffs());
    }

    #[test]
    fn galois_is_a_ring_map(a in num_strategy(), b in num_strategy(), u in 1u32..60) {
        let n = num_integer::lcm(a.conductor(), b.conductor());
        prop_assume!(num_integer::gcd(u, n) == 1);
        let (a, b) = (a.embed(n).unwrap(), b.embed(n).unwrap());
        prop_assert_eq!((&a * &b).galois(u), &a.galois(u) * &b.galois(u));
        prop_assert_eq!((&a + &b).galois(u), &a.galois(u) + &b.galois(u));
    }

    #[test]
    fn trace_of_spectrum(v in prop::collection::vec((1i64..=12).prop_flat_map(|q| (0..q, Just(q))), 1..=6)) {
        let s = Spectrum::new(v.iter().map(|&(p, q)| Rational64::new(p, q)).collect()).unwrap();
        let t = s.trace();
        let want = s.angles().iter().fold((0.0, 0.0), |(re, im), &r| {
            let x = 2.0 * PI * rat_f64(r);
            (re + x.cos(), im + x.sin())
        });
        prop_assert!(close(float_value(&t), want));
    }

    #[test]
    fn spectrum_of_conjugated_monomial_matrix(
        v in prop::collection::vec(prop::sample::select(vec![1i64, 2, 3, 4, 6, 12]).prop_flat_map(|q| (0..q, Just(q))), 2..=5),
        shift in 0usize..5,
    ) {
        // A diagonal matrix of roots of unity conjugated by a cyclic permutation
        // and a unipotent matrix: eigenvalues are unchanged.
        let n = 12u32;
        let d = v.len();
        let diag: Vec<CycloNum> = v.iter().map(|&(p, q)| CycloNum::root_of_unity(n, p * (12 / q))).collect();
        let m = CycloMatrix::diagonal(&diag);
        let perm: Vec<usize> = (0..d).map(|i| (i + shift) % d).collect();
        let p = CycloMatrix::permutation(&perm);
        let u = CycloMatrix::from_fn(d, 1, |i, j| {
            if i == j || j == i + 1 { CycloNum::one(1) } else { CycloNum::zero(1) }
        });
        let c = u.mul(&p).embed(n).unwrap();
        let x = c.mul(&m).mul(&c.inverse().unwrap());
        let s = Spectrum::new(v.iter().map(|&(p, q)| Rational64::new(p, q)).collect()).unwrap();
        prop_assert_eq!(x.spectrum(1000).unwrap(), s.clone());
        prop_assert_eq!(x.trace(), s.trace());
        prop_assert_eq!(x.det(), diag.iter().fold(CycloNum::one(n), |a, b| &a * b));
    }
}
