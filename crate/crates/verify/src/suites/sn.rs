//! Symmetric group characters against the Murnaghan-Nakayama oracle.

use rayon::prelude::*;
use serde_json::json;

use crate::partitions::{conjugate, hook_degree, murnaghan_nakayama, partitions, CycleType, SmallPartition};
use crate::{Tally, TrialConfig};

/// `lambda` or its conjugate has the form `(n - k, mu)` with `mu` a partition of `k`.
pub(crate) fn in_r(lambda: &[usize], n: usize, k: usize) -> bool {
    lambda[0] == n - k || conjugate(lambda)[0] == n - k
}

fn character_ranges(n: usize) -> Tally {
    let mut t = Tally::default();
    let classes: Vec<CycleType> = partitions(n).into_iter().map(CycleType::new).collect();
    let transposition = {
        let mut v = vec![1; n - 2];
        v.insert(0, 2);
        CycleType::new(v)
    };
    for shape in SmallPartition::ALL {
        let lambda = shape.partition(n);
        let at_t = murnaghan_nakayama(&lambda, &transposition);
        for mu in &classes {
            t.cases += 1;
            let mn = murnaghan_nakayama(&lambda, mu);
            let closed = shape.closed_form_exact(mu);
            t.check(closed == Some(mn), || {
                json!({ "law": "closed form", "n": n, "lambda": lambda, "mu": mu.parts(), "mn": mn, "closed": closed })
            });
            if !mu.is_identity() {
                t.check(mn.abs() <= at_t, || {
                    json!({ "law": "|rho(g)| <= rho(t)", "n": n, "lambda": lambda, "mu": mu.parts(), "value": mn, "at_t": at_t })
                });
            }
        }
    }
    // |chi(g)/chi(1)| <= 1/2 + c(g)/2n, as 2n |chi(g)| <= (n + c(g)) chi(1).
    for lambda in partitions(n) {
        let deg = murnaghan_nakayama(&lambda, &CycleType::new(vec![1; n]));
        t.check(deg as u128 == hook_degree(&lambda), || json!({ "law": "degree", "n": n, "lambda": lambda }));
        if deg <= 1 {
            continue;
        }
        for mu in classes.iter().filter(|m| !m.is_identity()) {
            t.cases += 1;
            let v = murnaghan_nakayama(&lambda, mu);
            let (nn, c) = (n as i64, mu.cycles() as i64);
            t.check(2 * nn * v.abs() <= (nn + c) * deg, || {
                json!({ "law": "character ratio", "n": n, "lambda": lambda, "mu": mu.parts(), "value": v, "degree": deg })
            });
        }
    }
    t
}

/// Degree dichotomy at `n >= 15`, with `k = 0` admitted for the two linear characters.
fn degree_dichotomy(n: usize) -> Tally {
    let mut t = Tally::default();
    let threshold = (n * (n - 1) * (n - 5) / 6) as u128;
    for lambda in partitions(n) {
        t.cases += 1;
        let deg = hook_degree(&lambda);
        let small = (0..=2).any(|k| in_r(&lambda, n, k));
        t.check(
            deg >= threshold || small,
            || json!({ "law": "degree dichotomy", "n": n, "lambda": lambda, "degree": deg.to_string() }),
        );
    }
    t
}

pub(super) fn sn_characters(_config: &TrialConfig) -> Tally {
    let parts: Vec<Tally> = (9..=13usize)
        .into_par_iter()
        .map(character_ranges)
        .chain((15..=16usize).into_par_iter().map(degree_dichotomy))
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}
