use std::collections::HashSet;

use agelab::catalog::{cyclic_quotient, deleted_permutation, imprimitive_reflection};
use agelab::cyclo::{CycloMatrix, CycloNum};
use agelab::group::{closure, FiniteMatrixGroup, GroupError, GroupSpec, DEFAULT_CAP};

fn close(spec: &GroupSpec) -> FiniteMatrixGroup {
    closure(spec, DEFAULT_CAP).unwrap()
}

/// Conjugacy classes by direct matrix conjugation over all elements.
fn brute_force_class_count(g: &FiniteMatrixGroup) -> usize {
    let elems: Vec<CycloMatrix> = (0..g.order()).map(|i| g.element(i)).collect();
    let invs: Vec<CycloMatrix> = elems.iter().map(|m| m.inverse().unwrap()).collect();
    let mut seen = vec![false; elems.len()];
    let mut count = 0;
    for x in 0..elems.len() {
        if seen[x] {
            continue;
        }
        count += 1;
        for (h, hi) in elems.iter().zip(&invs) {
            let c = h.mul(&elems[x]).mul(hi);
            seen[g.index_of(&c).unwrap()] = true;
        }
    }
    count
}

#[test]
fn trivial_group() {
    let spec = GroupSpec::new(3, vec![CycloMatrix::identity(3, 1)], Default::default()).unwrap();
    let g = close(&spec);
    assert_eq!(g.order(), 1);
    assert!(matches!(g.min_geodesic(), Err(GroupError::TrivialGroup)));
}

#[test]
fn closure_examples() {
    assert_eq!(close(&imprimitive_reflection(2, 1, 3).unwrap()).order(), 48);
    assert_eq!(close(&deleted_permutation(5, false).unwrap()).order(), 120);
}

#[test]
fn non_invertible_generator_rejected() {
    let z = CycloMatrix::from_integer_rows(&[vec![1, 0], vec![0, 0]]);
    let spec = GroupSpec::new(2, vec![z], Default::default()).unwrap();
    assert!(matches!(closure(&spec, 10), Err(GroupError::NonInvertibleGenerator(0))));
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(closure(&deleted_permutation(5, false).unwrap(), 100), Err(GroupError::ClosureExceedsCap(100))));
}

#[test]
fn classes_match_brute_force() {
    for spec in [
        imprimitive_reflection(2, 1, 2).unwrap(),
        imprimitive_reflection(3, 1, 2).unwrap(),
        imprimitive_reflection(3, 3, 3).unwrap(),
        deleted_permutation(4, false).unwrap(),
        deleted_permutation(5, true).unwrap(),
    ] {
        let g = close(&spec);
        assert_eq!(g.classes().len(), brute_force_class_count(&g));
    }
}

#[test]
fn class_examples() {
    let g = close(&cyclic_quotient(&[1, 2], 3).unwrap());
    assert_eq!(g.classes().len(), 3);
    assert!(g.classes().iter().all(|c| c.size == 1));
    assert_eq!(close(&deleted_permutation(4, false).unwrap()).classes().len(), 5);
}

#[test]
fn class_equation_and_lagrange() {
    for spec in [
        imprimitive_reflection(2, 1, 3).unwrap(),
        imprimitive_reflection(4, 2, 3).unwrap(),
        deleted_permutation(5, false).unwrap(),
        cyclic_quotient(&[1, 1, 2], 6).unwrap(),
    ] {
        let g = close(&spec);
        let n = g.order();
        let total: usize = g.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, n);
        assert!(g.classes().iter().all(|c| n.is_multiple_of(c.size)));
        let z = g.center_indices().len();
        let s = g.scalar_indices().len();
        assert_eq!(z % s, 0);
        assert_eq!(n % z, 0);
        for c in g.classes() {
            assert_eq!(n % g.normal_closure(c.representative).order(), 0);
        }
    }
}

#[test]
fn class_spectra_agree_on_members() {
    let g = close(&imprimitive_reflection(3, 1, 3).unwrap());
    for c in g.classes() {
        for &m in c.members.iter().take(5) {
            let s = g.element(m as usize).spectrum(1000).unwrap();
            assert_eq!(s, c.spectrum);
        }
    }
}

#[test]
fn products_and_inverses_match_matrices() {
    let g = close(&imprimitive_reflection(4, 2, 3).unwrap());
    for (x, y) in [(3, 17), (40, 41), (95, 2), (0, 50)] {
        let p = g.element(x).mul(&g.element(y));
        assert_eq!(g.index_of(&p), Some(g.mul(x, y)));
        let inv = g.element(x).inverse().unwrap();
        assert_eq!(g.index_of(&inv), Some(g.inverse(x)));
    }
}

#[test]
fn generator_order_does_not_change_the_set() {
    let spec = imprimitive_reflection(3, 1, 3).unwrap();
    let mut rev = spec.clone();
    rev.generators.reverse();
    let a = close(&spec);
    let b = close(&rev);
    assert_eq!(a.order(), b.order());
    let ka: HashSet<Vec<String>> = (0..a.order()).map(|i| a.element(i).to_entry_strings()).collect();
    let kb: HashSet<Vec<String>> = (0..b.order()).map(|i| b.element(i).to_entry_strings()).collect();
    assert_eq!(ka, kb);
}

#[test]
fn normal_closure_examples() {
    let g = close(&cyclic_quotient(&[1, 1], 6).unwrap());
    let x = g.generator_indices()[0];
    let sq = g.mul(x, x);
    assert_eq!(g.normal_closure(sq).order(), 3);

    let s4 = close(&deleted_permutation(4, false).unwrap());
    assert_eq!(s4.normal_closure(s4.generator_indices()[0]).order(), 24);

    let b3 = close(&imprimitive_reflection(2, 1, 3).unwrap());
    let sign = b3
        .index_of(
            &CycloMatrix::diagonal(&[CycloNum::from_int(-1, 1), CycloNum::one(1), CycloNum::one(1)]).embed(2).unwrap(),
        )
        .unwrap();
    let h = b3.normal_closure(sign);
    assert_eq!(h.order(), 8);
    // Brute force: the diagonal sign matrices.
    for i in 0..b3.order() {
        let m = b3.element(i);
        let diag = (0..3).all(|r| (0..3).all(|c| r == c || m.get(r, c).is_zero()));
        assert_eq!(h.contains(i), diag);
    }
}

#[test]
fn irreducibility_examples() {
    // Two equal linear characters: <chi, chi> = 4. Two distinct ones: 2.
    assert_eq!(close(&cyclic_quotient(&[1, 1], 3).unwrap()).mean_abs_trace_sq(), 4);
    assert_eq!(close(&cyclic_quotient(&[1, 2], 3).unwrap()).mean_abs_trace_sq(), 2);
    assert!(!close(&cyclic_quotient(&[1, 1], 3).unwrap()).is_irreducible());
    assert!(close(&deleted_permutation(5, false).unwrap()).is_irreducible());
    assert!(close(&imprimitive_reflection(3, 1, 3).unwrap()).is_irreducible());
}

#[test]
fn covering_numbers() {
    let s4 = close(&deleted_permutation(4, false).unwrap());
    let t = s4.class_of(s4.generator_indices()[0]);
    assert_eq!(s4.covering_beta(t, 100).unwrap(), 3);

    let c = close(&cyclic_quotient(&[1, 2], 3).unwrap());
    let gcls = c.class_of(c.generator_indices()[0]);
    assert_eq!(c.covering_beta(gcls, 100).unwrap(), 2);

    let a5 = close(&deleted_permutation(5, true).unwrap());
    let three = a5.class_of(a5.generator_indices()[0]);
    assert_eq!(a5.covering_beta(three, 100).unwrap(), 2);

    let s5 = close(&deleted_permutation(5, false).unwrap());
    let three = s5.classes().iter().position(|c| c.element_order == 3).unwrap();
    assert!(matches!(s5.covering_beta(three, 100), Err(GroupError::NotGeneratingClass)));
}

/// Covering number by brute force over element products, modulo scalars.
fn brute_beta(g: &FiniteMatrixGroup, class: usize) -> Option<usize> {
    let members: Vec<usize> = g.classes()[class].members.iter().map(|&m| m as usize).collect();
    let target = g.projective_order();
    let mut reached: HashSet<usize> = HashSet::from([g.projective_index(0)]);
    let mut frontier: Vec<usize> = vec![0];
    let mut seen_elems: HashSet<usize> = HashSet::from([0]);
    let mut k = 0;
    while reached.len() < target {
        k += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &c in &members {
                let y = g.mul(x, c);
                if seen_elems.insert(y) {
                    next.push(y);
                    reached.insert(g.projective_index(y));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    Some(k)
}

#[test]
fn covering_numbers_match_brute_force() {
    for spec in [
        imprimitive_reflection(2, 2, 3).unwrap(),
        imprimitive_reflection(3, 3, 3).unwrap(),
        deleted_permutation(5, true).unwrap(),
        imprimitive_reflection(2, 1, 3).unwrap(),
    ] {
        let g = close(&spec);
        for (i, c) in g.classes().iter().enumerate() {
            if g.is_central(c.representative) {
                continue;
            }
            assert_eq!(g.covering_beta(i, 1000).ok(), brute_beta(&g, i), "class {}", c.label);
        }
    }
}

#[test]
fn geodesic_examples() {
    let pi = std::f64::consts::PI;
    for d in [1usize, 2, 4, 7] {
        let g = close(&cyclic_quotient(&vec![1; d], 2).unwrap());
        assert!((g.min_geodesic().unwrap() - pi * (d as f64).sqrt()).abs() < 1e-12);
    }
    let g = close(&cyclic_quotient(&[1, 1], 3).unwrap());
    assert!((g.min_geodesic().unwrap() - 2.0 * pi * 2f64.sqrt() / 3.0).abs() < 1e-12);
    // A transposition has norm 1/2, but a 3-cycle (angles 1/3, 2/3) has
    // norm sqrt(2)/3, which is smaller.
    let g = close(&deleted_permutation(4, false).unwrap());
    let oracle = (1..g.order())
        .map(|i| {
            let s = g.element(i).spectrum(100).unwrap();
            let sq: f64 = s
                .angles()
                .iter()
                .map(|r| {
                    let x = *r.numer() as f64 / *r.denom() as f64;
                    x.min(1.0 - x).powi(2)
                })
                .sum();
            2.0 * pi * sq.sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    assert!((oracle - 2.0 * pi * 2f64.sqrt() / 3.0).abs() < 1e-12);
    assert!((g.min_geodesic().unwrap() - oracle).abs() < 1e-12);
}

#[test]
fn irreducible_groups_have_a_zero_trace() {
    for spec in [
        imprimitive_reflection(2, 1, 3).unwrap(),
        imprimitive_reflection(3, 3, 3).unwrap(),
        deleted_permutation(5, false).unwrap(),
        deleted_permutation(6, true).unwrap(),
    ] {
        let g = close(&spec);
        assert!(g.is_irreducible());
        assert!(g.has_zero_trace_element());
    }
}

#[test]
fn group_file_round_trip() {
    let spec = imprimitive_reflection(3, 1, 2).unwrap();
    let text = spec.to_json();
    let back = GroupSpec::from_json(&text).unwrap();
    assert_eq!(back, spec);
    assert_eq!(back.to_json(), text);
}
