//! Numeric suites on random finite-order unitaries.

use num_rational::Rational64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{angles_json, random_angle, random_angles, MAX_DEN};
use crate::numeric::{
    circle_dist, conjugated_diagonal, eigen_angles, fixed_dim, haar_unitary, kron, tensor_permutation, to_f64, CMat,
};
use crate::{run_trials, Tally, TrialConfig};

/// Eigen-angles with those within `tol` of 0 snapped to 0, or `None` when
/// some angle is too close to 0 to decide.
fn snapped_angles(m: &CMat, tol: f64) -> Option<Vec<f64>> {
    let mut out = Vec::new();
    for a in eigen_angles(m) {
        let d = circle_dist(a);
        if d < tol {
            out.push(0.0);
        } else if d < tol * 1e3 {
            return None;
        } else {
            out.push(a);
        }
    }
    Some(out)
}

fn rat_sum(v: &[Rational64]) -> f64 {
    to_f64(v.iter().sum())
}

/// `x` and `y` share a fixed space of dimension `k`; on a further block of
/// dimension `j`, `y` is the inverse of `x`; on the rest they are either
/// simultaneously diagonal or independently rotated.
pub(super) fn chen_ruan(config: &TrialConfig) -> Tally {
    let max_dim = config.max_dim.max(2);
    let tol = config.tolerance;
    run_trials(config, |rng, t| {
        let n = rng.gen_range(2..=max_dim);
        let k = rng.gen_range(0..n);
        let j = rng.gen_range(0..=n - k);
        let r = n - k - j;
        let rotate = rng.gen_bool(0.5);
        let zero = Rational64::zero();
        let pair = random_angles(rng, j, MAX_DEN);
        let mut xa = vec![zero; k];
        xa.extend(&pair);
        xa.extend(random_angles(rng, r, MAX_DEN));
        let mut ya = vec![zero; k];
        ya.extend(pair.iter().map(|&a| if a.is_zero() { a } else { Rational64::from(1) - a }));
        let y_rest = random_angles(rng, r, MAX_DEN);
        ya.extend(&y_rest);

        let u = haar_unitary(rng, n);
        let x = conjugated_diagonal(&u, &xa);
        let mut inner = conjugated_diagonal(&CMat::identity(n, n), &ya);
        if rotate && r > 0 {
            let w = haar_unitary(rng, r);
            let block = conjugated_diagonal(&w, &y_rest);
            inner.view_mut((k + j, k + j), (r, r)).copy_from(&block);
        }
        let y = &u * inner * u.adjoint();
        let xy = &x * &y;
        let z = xy.adjoint();

        let fixed_xy = fixed_dim(&[&x, &y], tol);
        let fixed_prod = fixed_dim(&[&xy], tol);
        let fixed_all = fixed_dim(&[&x, &y, &z], tol);
        let (Some(b), Some(c)) = (snapped_angles(&xy, tol), snapped_angles(&z, tol)) else {
            t.indeterminate += 1;
            return;
        };
        if fixed_xy.uncertain || fixed_prod.uncertain || fixed_all.uncertain {
            t.indeterminate += 1;
            return;
        }
        let zero_b = b.iter().filter(|&&a| a == 0.0).count();
        if zero_b != fixed_prod.rank {
            t.indeterminate += 1;
            return;
        }
        let (age_x, age_y) = (rat_sum(&xa), rat_sum(&ya));
        let age_xy: f64 = b.iter().sum();
        let age_z: f64 = c.iter().sum();
        let lhs1 = age_x + age_y - age_xy + fixed_xy.rank as f64 - fixed_prod.rank as f64;
        let lhs2 = age_x + age_y + age_z - (n - fixed_all.rank) as f64;
        let w = |law: &str, value: f64| {
            json!({
                "law": law, "dim": n, "x": angles_json(&xa), "y": angles_json(&ya), "rotated": rotate,
                "xy_angles": b, "dim_fixed_xy": fixed_xy.rank, "dim_fixed_prod": fixed_prod.rank,
                "dim_fixed_all": fixed_all.rank, "value": value,
            })
        };
        // Determinants force both sides to be integers.
        let slack = 1e-6;
        t.check((lhs1 - lhs1.round()).abs() < slack && lhs1.round() >= 0.0, || w("Chen-Ruan (i)", lhs1));
        t.check((lhs2 - lhs2.round()).abs() < slack && lhs2.round() >= 0.0, || w("Chen-Ruan (ii)", lhs2));
    })
}

/// A complex reflection `x` and a `y` with distinct eigenvalues, in independent
/// random bases; draws failing the genericity hypotheses are redrawn.
pub(super) fn interlacing(config: &TrialConfig) -> Tally {
    let max_dim = config.max_dim.max(2);
    let tol = config.tolerance;
    let sep = tol * 1e3;
    run_trials(config, |rng, t| {
        for _ in 0..100 {
            let n = rng.gen_range(2..=max_dim);
            let r = loop {
                let r = random_angle(rng, MAX_DEN);
                if !r.is_zero() {
                    break r;
                }
            };
            let mut a = random_angles(rng, n, MAX_DEN);
            a.sort();
            if a.windows(2).any(|p| p[0] == p[1]) {
                continue;
            }
            let mut xa = vec![Rational64::zero(); n];
            xa[0] = r;
            let x = conjugated_diagonal(&haar_unitary(rng, n), &xa);
            let y = conjugated_diagonal(&haar_unitary(rng, n), &a);
            let b = eigen_angles(&(&x * &y));
            let af: Vec<f64> = a.iter().map(|&q| to_f64(q)).collect();
            let gaps_ok = (0..n).all(|i| circle_dist(b[(i + 1) % n] - b[i]) > sep) && circle_dist(b[0]) > sep;
            let apart = af.iter().all(|&p| b.iter().all(|&q| circle_dist(p - q) > sep));
            if !gaps_ok || !apart {
                continue;
            }
            let case_a = (0..n).all(|i| af[i] < b[i] && (i + 1 == n || b[i] < af[i + 1]));
            let case_b = (0..n).all(|i| b[i] < af[i] && (i + 1 == n || af[i] < b[i + 1]));
            let defect = to_f64(r) + af.iter().sum::<f64>() - b.iter().sum::<f64>();
            let w = |law: &str| json!({ "law": law, "r": r.to_string(), "y": angles_json(&a), "xy_angles": b, "defect": defect });
            t.check(case_a || case_b, || w("alternation"));
            let want = if case_b { 1.0 } else { 0.0 };
            t.check((defect - want).abs() < tol * n as f64 * 10.0, || w("age(x) + age(y) - age(xy)"));
            return;
        }
        t.indeterminate += 1;
    })
}

/// `g = (a_1 ⊗ ... ⊗ a_m) P_sigma` on `(C^d)^{⊗m}`, with the factors along
/// each cycle of `sigma` commuting so that `g` has finite order.
pub(super) fn tensor_induced(config: &TrialConfig) -> Tally {
    let max = config.max_dim.clamp(2, 3);
    let tol = config.tolerance;
    run_trials(config, |rng, t| {
        let d = rng.gen_range(2..=max);
        let m = rng.gen_range(2..=max);
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.shuffle(rng);
        let mut cycle_of = vec![usize::MAX; m];
        let mut s = 0;
        for start in 0..m {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while cycle_of[i] == usize::MAX {
                cycle_of[i] = s;
                i = sigma[i];
            }
            s += 1;
        }
        let bases: Vec<CMat> = (0..s).map(|_| haar_unitary(rng, d)).collect();
        let factor_angles: Vec<Vec<Rational64>> = (0..m).map(|_| random_angles(rng, d, MAX_DEN)).collect();
        let factors: Vec<CMat> = (0..m).map(|i| conjugated_diagonal(&bases[cycle_of[i]], &factor_angles[i])).collect();
        let a = factors[1..].iter().fold(factors[0].clone(), |acc, f| kron(&acc, f));
        let g = a * tensor_permutation(d, &sigma);
        let tr = g.trace().norm();
        let bound = (d as f64).powi(s as i32);
        t.check(tr <= bound + tol * bound, || {
            json!({
                "law": "|Tr(g)| <= dim(V1)^s", "d": d, "m": m, "sigma": sigma, "cycles": s,
                "factors": factor_angles.iter().map(|v| angles_json(v)).collect::<Vec<_>>(), "abs_trace": tr,
            })
        });
    })
}
