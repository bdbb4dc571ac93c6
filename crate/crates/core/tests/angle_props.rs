use std::f64::consts::PI;

use agelab::angle::{commuting_product, rat_f64, Spectrum};
use num_rational::Rational64;
use num_traits::Zero;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn spectrum_strategy(max_dim: usize) -> impl Strategy<Value = Spectrum> {
    prop::collection::vec((1i64..=12).prop_flat_map(|q| (0..q, Just(q))), 1..=max_dim)
        .prop_map(|v| Spectrum::new(v.into_iter().map(|(p, q)| Rational64::new(p, q)).collect()).unwrap())
}

fn pair_same_dim() -> impl Strategy<Value = (Spectrum, Spectrum)> {
    (1usize..=6)
        .prop_flat_map(|d| {
            let one = prop::collection::vec((1i64..=12).prop_flat_map(|q| (0..q, Just(q))), d);
            (one.clone(), one)
        })
        .prop_map(|(a, b)| {
            let f = |v: Vec<(i64, i64)>| {
                Spectrum::new(v.into_iter().map(|(p, q)| Rational64::new(p, q)).collect()).unwrap()
            };
            (f(a), f(b))
        })
}

/// `d - |sum e^{2 pi i r}|` in floating point.
fn float_delta(s: &Spectrum) -> f64 {
    let (re, im) = s.angles().iter().fold((0.0, 0.0), |(a, b), &r| {
        let x = 2.0 * PI * rat_f64(r);
        (a + x.cos(), b + x.sin())
    });
    s.dim() as f64 - re.hypot(im)
}

/// Infimum over all real shifts t of `sum dist(r - t, Z)^2`: for each way of
/// lifting the sorted angles to a window of length one, the best t is the mean.
fn float_inf_norm_sq(s: &Spectrum) -> f64 {
    let a: Vec<f64> = s.angles().iter().map(|&r| rat_f64(r)).collect();
    let n = a.len();
    (0..n)
        .map(|k| {
            let b: Vec<f64> = (0..n).map(|j| if j < k { a[j] + 1.0 } else { a[j] }).collect();
            let m = b.iter().sum::<f64>() / n as f64;
            b.iter().map(|x| (x - m) * (x - m)).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn examples() {
    let sp = |p: &[(i64, i64)]| Spectrum::from_pairs(p).unwrap();
    assert_eq!(sp(&[(1, 2), (1, 2), (0, 1), (0, 1)]).age(), Rational64::from(1));
    assert_eq!(sp(&[(1, 3), (0, 1), (0, 1), (0, 1)]).age(), Rational64::new(1, 3));
    let a = sp(&[(0, 1), (1, 2)]).age_star();
    assert_eq!((a.value, a.shift), (Rational64::new(1, 2), Rational64::zero()));
    assert_eq!(sp(&[(1, 2), (1, 2), (1, 2)]).norm_metric_sq(), Rational64::new(3, 4));
    assert_eq!(sp(&[(1, 3), (0, 1), (0, 1), (0, 1)]).norm_metric_sq(), Rational64::new(1, 9));
    for n in 2..10usize {
        let mut v = vec![(0, 1); n];
        v[0] = (1, 3);
        let d2 = sp(&v).d2_squared().to_f64();
        let nf = n as f64;
        assert!((d2 - 2.0 * (nf - (nf * nf - 3.0 * nf + 3.0).sqrt())).abs() < 1e-12);
    }
    assert_eq!(sp(&[(1, 2), (1, 2), (0, 1), (0, 1)]).d2_squared().exact_rational().unwrap(), 8);
    for d in 4..9 {
        let mut v = vec![(0, 1); d];
        v[0] = (1, 2);
        v[1] = (1, 2);
        assert_eq!(sp(&v).delta().exact_rational().unwrap(), 4);
    }
    let (lo, hi) = sp(&[(1, 2), (0, 1)]).d1_bounds();
    assert!((lo - 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
    let (lo, hi) = sp(&[(1, 2), (1, 2), (0, 1), (0, 1)]).d1_bounds();
    assert!((lo - 4.0).abs() < 1e-12 && (hi - 4.0).abs() < 1e-12);
}

#[test]
fn candidate_shifts_alone_can_reach_equality_in_the_sandwich() {
    // With (1/2, 0) both root-of-unity shifts give 4 * 1/2 = d2 = 2; the
    // infimum over all scalars (t = 1/4) gives norm^2 = 1/8.
    let s = Spectrum::from_pairs(&[(1, 2), (0, 1)]).unwrap();
    assert_eq!(s.norm_metric_sq_inf(), Rational64::new(1, 8));
    assert!(4.0 * (1.0f64 / 8.0).sqrt() < s.d2_squared().to_f64().sqrt());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn age_plus_inverse_age_counts_nonzero(s in spectrum_strategy(8)) {
        prop_assert_eq!(s.age() + s.inverse().age(), Rational64::from(s.nonzero_count() as i64));
    }

    #[test]
    fn age_star_bounds(s in spectrum_strategy(8)) {
        let a = s.age_star();
        prop_assert!(a.value >= Rational64::zero() && a.value <= s.age());
        prop_assert_eq!(a.value.is_zero(), s.is_scalar());
        // Brute force over every shift k / N, N the order of the spectrum.
        let n = s.order() as i64;
        let brute = (0..n).map(|k| s.shifted_age(Rational64::new(k, n))).min().unwrap();
        prop_assert_eq!(brute, a.value);
        prop_assert_eq!(s.shifted_age(a.shift), a.value);
    }

    #[test]
    fn direct_sums(s in spectrum_strategy(5), t in spectrum_strategy(5)) {
        let u = s.direct_sum(&t);
        prop_assert_eq!(u.age(), s.age() + t.age());
        prop_assert!(u.age_star().value >= s.age_star().value + t.age_star().value);
    }

    #[test]
    fn tensor_products(s in spectrum_strategy(4), t in spectrum_strategy(3)) {
        let u = s.tensor(&t);
        prop_assert_eq!(u.dim(), s.dim() * t.dim());
        prop_assert!(u.age_star().value >= Rational64::from(t.dim() as i64) * s.age_star().value);
    }

    #[test]
    fn commuting_products((s, t) in pair_same_dim()) {
        let u = commuting_product(s.angles(), t.angles()).unwrap();
        prop_assert!(u.age() <= s.age() + t.age());
        prop_assert!(u.age_star().value <= s.age_star().value + t.age_star().value);
    }

    #[test]
    fn delta_matches_float(s in spectrum_strategy(8)) {
        let dv = s.delta();
        prop_assert!((dv.to_f64() - float_delta(&s)).abs() < 1e-9);
        prop_assert!(dv.error_bound() < 1e-20);
        prop_assert!((s.d2_squared().to_f64() - 2.0 * float_delta(&s)).abs() < 1e-9);
    }

    #[test]
    fn delta_is_shift_invariant(s in spectrum_strategy(6), k in 0i64..12) {
        let t = s.shifted(Rational64::new(k, 12));
        prop_assert!((t.delta().to_f64() - s.delta().to_f64()).abs() < 1e-12);
        prop_assert_eq!(t.delta().surd().map(|x| x.1), s.delta().surd().map(|x| x.1));
    }

    #[test]
    fn d1_interval(s in spectrum_strategy(8)) {
        let (lo, hi) = s.d1_bounds();
        let d2 = (2.0 * s.delta().to_f64()).max(0.0).sqrt();
        prop_assert!(lo <= hi + TOL);
        prop_assert!(d2 <= hi + TOL);
        prop_assert!(hi <= (s.dim() as f64).sqrt() * d2 + TOL);
    }

    #[test]
    fn metric_sandwich(s in spectrum_strategy(8)) {
        prop_assume!(s.distinct_count() >= 2);
        let inf = s.norm_metric_sq_inf();
        prop_assert!((rat_f64(inf) - float_inf_norm_sq(&s)).abs() < 1e-12);
        let d2 = s.d2_squared().to_f64().sqrt();
        prop_assert!(4.0 * rat_f64(inf).sqrt() < d2 - 1e-12);
        prop_assert!(d2 <= 2.0 * PI * rat_f64(s.norm_metric_sq()).sqrt() + TOL);
    }

    #[test]
    fn arc_bounds(s in spectrum_strategy(8)) {
        let age = rat_f64(s.age());
        prop_assert!(s.d1_bounds().1 <= 2.0 * PI * age + TOL);
        prop_assert!(s.d2_squared().to_f64() <= 2.9 * PI * age + TOL);
    }

    #[test]
    fn junior_deviation_table(s in spectrum_strategy(8)) {
        let a = s.age_star().value;
        prop_assume!(a <= Rational64::from(1));
        let delta = s.delta().to_f64();
        let arc = s.shortest_arc();
        prop_assert!(delta < 4.556 + TOL);
        for (num, den, bound) in [(1, 2, 4.278), (3, 5, 3.632), (2, 3, 3.019), (7, 10, 2.676), (3, 4, 2.139)] {
            if arc >= Rational64::new(num, den) {
                prop_assert!(delta < bound + TOL, "arc {} delta {}", arc, delta);
            }
        }
        if a > Rational64::zero() {
            prop_assert!(s.d2_squared().to_f64() <= 2.9 * PI + TOL);
        }
    }

    #[test]
    fn shortest_arc_matches_brute_force(s in spectrum_strategy(8)) {
        // Largest gap between consecutive distinct angles on the circle.
        let mut d: Vec<Rational64> = s.angles().to_vec();
        d.dedup();
        let brute = if d.len() == 1 {
            Rational64::zero()
        } else {
            (0..d.len())
                .map(|i| {
                    let next = if i + 1 < d.len() { d[i + 1] } else { d[0] + 1 };
                    Rational64::from(1) - (next - d[i])
                })
                .min()
                .unwrap()
        };
        prop_assert_eq!(s.shortest_arc(), brute);
    }
}
