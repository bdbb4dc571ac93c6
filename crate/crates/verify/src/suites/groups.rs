//! Exact suites over enumerated catalog groups.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use agelab::angle::Spectrum;
use agelab::catalog;
use agelab::cyclo::{CycloMatrix, CycloNum};
use agelab::group::{closure, FiniteMatrixGroup, GroupError, GroupSpec};
use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rug::Rational;
use serde_json::json;

use crate::{Tally, TrialConfig};

/// Largest group order enumerated by the group suites.
pub const MAX_ORDER: usize = 50_000;

const IMPRIMITIVE: [(u32, u32, usize); 16] = [
    (2, 1, 2),
    (4, 1, 2),
    (2, 1, 3),
    (2, 2, 3),
    (3, 1, 3),
    (3, 3, 3),
    (4, 1, 3),
    (4, 2, 3),
    (4, 4, 3),
    (5, 5, 3),
    (6, 6, 3),
    (2, 1, 4),
    (2, 2, 4),
    (3, 3, 4),
    (2, 1, 5),
    (2, 2, 5),
];

fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
    kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Catalog groups with dimension above 1, irreducible by construction, of
/// order at most [`MAX_ORDER`].
pub fn bound1_groups() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 4..=7 {
        for alt in [false, true] {
            out.push(catalog::deleted_permutation(n, alt).expect("n >= 2"));
        }
    }
    for (d, e, n) in IMPRIMITIVE {
        out.push(catalog::imprimitive_reflection(d, e, n).expect("valid parameters"));
    }
    out.push(catalog::binary_icosahedral());
    out.push(catalog::build("wreath", &params(&[("base", "binary_icosahedral"), ("m", "2")])).expect("catalog wreath"));
    out.push(catalog::build("deleted_tensor", &params(&[("m", "4")])).expect("catalog tensor"));
    out
}

fn enumerate(spec: &GroupSpec) -> Option<FiniteMatrixGroup> {
    match closure(spec, MAX_ORDER) {
        Ok(g) => Some(g),
        Err(GroupError::ClosureExceedsCap(_)) => None,
        Err(e) => panic!("catalog group failed to enumerate: {e}"),
    }
}

fn label(g: &FiniteMatrixGroup) -> String {
    g.spec().metadata.label.clone().unwrap_or_default()
}

/// Sign of the real cyclotomic number `lhs - rhs * abs_sq`.
fn sign_of(lhs: &Rational, rhs: &Rational, abs_sq: &CycloNum) -> Ordering {
    match abs_sq.as_rational() {
        Some(q) => {
            let r = Rational::from(rhs * &q);
            lhs.partial_cmp(&r).expect("rationals are ordered")
        }
        None => {
            let n = abs_sq.conductor();
            let d = &CycloNum::from_rational(lhs.clone(), n) - &abs_sq.scale(rhs);
            d.sign_real()
        }
    }
}

fn bound1_group(g: &FiniteMatrixGroup) -> Tally {
    let mut t = Tally::default();
    let n = g.dim() as i64;
    let name = label(g);
    let d2: Vec<f64> = g.classes().iter().map(|c| c.spectrum.d2_squared().to_f64()).collect();
    for c in g.classes() {
        if g.is_central(c.representative) {
            continue;
        }
        let beta = match g.covering_beta(c.index, usize::MAX) {
            Ok(b) => b as i64,
            Err(GroupError::NotGeneratingClass) => continue,
            Err(e) => panic!("covering number of {name}: {e}"),
        };
        t.cases += 1;
        // dim <= (beta d2)^2 / 2  <=>  beta^4 |Tr|^2 <= ((beta^2 - 1) dim)^2.
        let lhs = Rational::from((beta * beta - 1) * n).square();
        let rhs = Rational::from(beta.pow(4));
        let abs_sq = g.trace(c.representative).abs_sq();
        t.check(sign_of(&lhs, &rhs, &abs_sq) != Ordering::Less, || {
            json!({ "law": "dim <= (beta d2)^2 / 2", "group": name, "class": c.label, "beta": beta, "d2_sq": d2[c.index] })
        });
        // The intermediate step: every non-central h has d2(h)^2 <= beta^2 d2(g)^2.
        let cap = (beta * beta) as f64 * d2[c.index];
        let worst =
            g.classes().iter().filter(|h| !g.is_central(h.representative)).map(|h| d2[h.index]).fold(0.0, f64::max);
        t.check(worst <= cap + 1e-9, || {
            json!({ "law": "d2(h)^2 <= (beta d2(g))^2", "group": name, "class": c.label, "beta": beta, "worst": worst })
        });
    }
    t
}

pub(super) fn bound1(_config: &TrialConfig) -> Tally {
    let specs = bound1_groups();
    let parts: Vec<Tally> = specs
        .par_iter()
        .map(|spec| match enumerate(spec) {
            Some(g) => {
                assert!(g.is_irreducible(), "{} is reducible", label(&g));
                bound1_group(&g)
            }
            None => Tally::default(),
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

/// The permutation induced on `blocks`: `out[j] = i` when block `j` is mapped to block `i`.
pub(crate) fn block_permutation(m: &CycloMatrix, blocks: &[Vec<usize>]) -> Vec<usize> {
    blocks
        .iter()
        .map(|src| {
            blocks
                .iter()
                .position(|dst| dst.iter().any(|&r| src.iter().any(|&c| !m.get(r, c).is_zero())))
                .expect("invertible matrix")
        })
        .collect()
}

/// Cycle lengths above 1, sorted.
fn moving_cycles(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 1 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// Some scalar multiple has exactly two nonzero angles `(r, 1 - r)` and order 2 or 3.
fn scalar_multiple_is_small_bireflection(s: &Spectrum) -> bool {
    let mut shifts = s.angles().to_vec();
    shifts.dedup();
    shifts.into_iter().any(|t| {
        let g = s.shifted(t);
        let nz: Vec<Rational64> = g.angles().iter().copied().filter(|r| !r.is_zero()).collect();
        nz.len() == 2 && nz[0] + nz[1] == Rational64::one() && matches!(*nz[0].denom(), 2 | 3)
    })
}

fn imprimitive_group(g: &FiniteMatrixGroup, lines: bool) -> Tally {
    let mut t = Tally::default();
    let name = label(g);
    let blocks = g.spec().metadata.block_system.clone().expect("monomial catalog groups carry blocks");
    let k = blocks[0].len() as i64;
    let n = g.dim() as i64;
    for c in g.classes() {
        t.cases += 1;
        let perm = block_permutation(&g.element(c.representative), &blocks);
        let cycles = moving_cycles(&perm);
        let mu: usize = cycles.iter().sum();
        let w = |law: &str| json!({ "law": law, "group": name, "class": c.label, "spectrum": c.spectrum.to_strings(), "block_cycles": cycles });
        // d2^2 >= 2 mu dim(V1)  <=>  dim - mu k >= 0 and (dim - mu k)^2 >= |Tr|^2.
        let slack = n - mu as i64 * k;
        let abs_sq = g.trace(c.representative).abs_sq();
        let ok = slack >= 0 && sign_of(&Rational::from(slack * slack), &Rational::from(1), &abs_sq) != Ordering::Less;
        t.check(ok, || w("d2^2 >= 2 mu dim(V1)"));
        if !lines {
            continue;
        }
        let star = c.spectrum.age_star().value;
        if star > Rational64::one() {
            continue;
        }
        let case_i = cycles.is_empty() || cycles == [2];
        let case_ii = (cycles == [3] || cycles == [2, 2])
            && star == Rational64::one()
            && scalar_multiple_is_small_bireflection(&c.spectrum);
        t.check(case_i || case_ii, || w("junior block action"));
        if !case_i && !star.is_zero() {
            t.check(star == Rational64::one(), || w("age* = 1 off the 2-cycles"));
        }
    }
    t
}

pub(super) fn imprimitive(_config: &TrialConfig) -> Tally {
    let mut specs: Vec<(GroupSpec, bool)> = IMPRIMITIVE
        .iter()
        .map(|&(d, e, n)| (catalog::imprimitive_reflection(d, e, n).expect("valid parameters"), true))
        .collect();
    specs.push((catalog::build("wreath", &params(&[("base", "binary_icosahedral"), ("m", "2")])).unwrap(), false));
    specs.push((catalog::build("wreath", &params(&[("base", "cyclic"), ("r", "3"), ("m", "4")])).unwrap(), true));
    let parts: Vec<Tally> = specs
        .par_iter()
        .map(|(spec, lines)| enumerate(spec).map(|g| imprimitive_group(&g, *lines)).unwrap_or_default())
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

fn non_scalar_spectra(spec: &GroupSpec) -> (String, Vec<Spectrum>) {
    let g = enumerate(spec).expect("small primitive group");
    let name = label(&g);
    let mut v: Vec<Spectrum> = g.classes().iter().map(|c| c.spectrum.clone()).filter(|s| !s.is_scalar()).collect();
    v.sort_by_key(|s| s.to_strings());
    v.dedup();
    (name, v)
}

/// `A ⊗ B` over non-scalar classes of primitive groups with `dim A >= 3`,
/// `dim B >= 2`, and the arc bound for non-central elements of primitive groups.
pub(super) fn tensor_pairs() -> Tally {
    let mut t = Tally::default();
    let big: Vec<(String, Vec<Spectrum>)> = [(5, false), (5, true), (6, false), (6, true)]
        .iter()
        .map(|&(n, alt)| non_scalar_spectra(&catalog::deleted_permutation(n, alt).unwrap()))
        .collect();
    let mut small = vec![non_scalar_spectra(&catalog::binary_icosahedral())];
    small.extend(big[..3].iter().cloned());
    for (name, spectra) in big.iter().chain(&small[..1]) {
        for s in spectra {
            t.check(s.shortest_arc() >= Rational64::new(1, 6), || {
                json!({ "law": "arc of a non-central element >= 1/6 turn", "group": name, "spectrum": s.to_strings() })
            });
        }
    }
    for (na, sa) in &big {
        for (nb, sb) in &small {
            for a in sa {
                for b in sb {
                    t.cases += 1;
                    let star = a.tensor(b).age_star().value;
                    t.check(star > Rational64::one(), || {
                        json!({ "law": "age*(A ⊗ B) > 1", "a_group": na, "b_group": nb, "a": a.to_strings(), "b": b.to_strings(), "age_star": star.to_string() })
                    });
                }
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_actions() {
        let g = catalog::imprimitive_reflection(3, 1, 3).unwrap();
        let lines: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
        let p = block_permutation(&g.generators[0], &lines);
        assert_eq!(moving_cycles(&p), vec![2]);
        let swap = catalog::wreath_swap_element(&CycloMatrix::identity(2, 1), 3);
        let blocks = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        assert_eq!(moving_cycles(&block_permutation(&swap, &blocks)), vec![2]);
    }

    #[test]
    fn small_bireflections() {
        let s = Spectrum::from_pairs(&[(1, 3), (2, 3), (0, 1), (0, 1)]).unwrap();
        assert!(scalar_multiple_is_small_bireflection(&s));
        let s = Spectrum::from_pairs(&[(1, 4), (3, 4), (0, 1), (0, 1)]).unwrap();
        assert!(!scalar_multiple_is_small_bireflection(&s));
        let s = Spectrum::from_pairs(&[(1, 2), (1, 2), (1, 2), (0, 1)]).unwrap();
        assert!(!scalar_multiple_is_small_bireflection(&s));
    }
}
