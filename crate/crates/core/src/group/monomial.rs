//! Monomial groups handled through their permutation image and diagonal
//! kernel, without enumerating elements.
//!
//! Every element is `(perm, exps)`, sending `e_j` to `zeta_m^exps[j] e_perm[j]`.
//! The kernel of the permutation map is computed from Schreier generators.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Rational64;

use super::{GroupError, GroupSpec};
use crate::angle::Spectrum;
use crate::cyclo::{CycloMatrix, CycloNum};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialElement {
    pub perm: Vec<u8>,
    pub exps: Vec<u32>,
}

impl MonomialElement {
    pub fn identity(n: usize) -> Self {
        MonomialElement { perm: (0..n as u8).collect(), exps: vec![0; n] }
    }

    /// Product `self * other` (apply `other` first).
    pub fn mul(&self, other: &Self, m: u32) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        let mut exps = vec![0u32; n];
        for j in 0..n {
            let k = other.perm[j] as usize;
            perm[j] = self.perm[k];
            exps[j] = (other.exps[j] + self.exps[k]) % m;
        }
        MonomialElement { perm, exps }
    }

    pub fn inverse(&self, m: u32) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        let mut exps = vec![0u32; n];
        for j in 0..n {
            let k = self.perm[j] as usize;
            perm[k] = j as u8;
            exps[k] = (m - self.exps[j]) % m;
        }
        MonomialElement { perm, exps }
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j)
    }

    /// Points moved by the permutation part.
    pub fn support(&self) -> usize {
        self.perm.iter().enumerate().filter(|(j, &p)| p as usize != *j).count()
    }

    /// Each `L`-cycle with entry product `zeta_m^a` contributes the `L`-th roots of `zeta_m^a`.
    pub fn spectrum(&self, m: u32) -> Spectrum {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut angles = Vec::with_capacity(n);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0i64;
            let mut a = 0i64;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                a += self.exps[j] as i64;
                len += 1;
                j = self.perm[j] as usize;
            }
            for t in 0..len {
                angles.push(Rational64::new(a + t * m as i64, len * m as i64));
            }
        }
        Spectrum::from_reduced(angles).unwrap()
    }

    pub fn to_matrix(&self, m: u32) -> CycloMatrix {
        let perm: Vec<usize> = self.perm.iter().map(|&p| p as usize).collect();
        let c: Vec<CycloNum> = self.exps.iter().map(|&e| CycloNum::root_of_unity(m, e as i64)).collect();
        CycloMatrix::monomial(&perm, &c)
    }

    /// Reads a monomial matrix whose nonzero entries are `m`-th roots of unity.
    pub fn from_matrix(g: &CycloMatrix, m: u32) -> Option<Self> {
        let n = g.dim();
        let roots: Vec<CycloNum> = (0..m).map(|k| CycloNum::root_of_unity(m, k as i64)).collect();
        let mut perm = vec![0u8; n];
        let mut exps = vec![0u32; n];
        let mut used = vec![false; n];
        for j in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| !g.get(i, j).is_zero()).collect();
            if nz.len() != 1 || used[nz[0]] {
                return None;
            }
            used[nz[0]] = true;
            perm[j] = nz[0] as u8;
            exps[j] = roots.iter().position(|r| r == g.get(nz[0], j))? as u32;
        }
        Some(MonomialElement { perm, exps })
    }
}

/// A monomial group described by a permutation transversal and its diagonal subgroup.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    n: usize,
    m: u32,
    gens: Vec<MonomialElement>,
    transversal: HashMap<Vec<u8>, MonomialElement>,
    diagonal: HashSet<Vec<u32>>,
}

impl MonomialGroup {
    pub fn new(n: usize, m: u32, gens: Vec<MonomialElement>) -> Self {
        assert!(n <= u8::MAX as usize, "too many coordinates");
        let id = MonomialElement::identity(n);
        let mut transversal = HashMap::new();
        transversal.insert(id.perm.clone(), id.clone());
        let mut queue = VecDeque::from([id.perm.clone()]);
        let mut schreier: HashSet<Vec<u32>> = HashSet::new();
        while let Some(p) = queue.pop_front() {
            let t = transversal[&p].clone();
            for s in &gens {
                let st = s.mul(&t, m);
                match transversal.get(&st.perm) {
                    Some(u) => {
                        let d = u.inverse(m).mul(&st, m);
                        debug_assert!(d.is_diagonal());
                        if d.exps.iter().any(|&e| e != 0) {
                            schreier.insert(d.exps);
                        }
                    }
                    None => {
                        queue.push_back(st.perm.clone());
                        transversal.insert(st.perm.clone(), st);
                    }
                }
            }
        }
        let dgens: Vec<Vec<u32>> = schreier.into_iter().collect();
        let mut diagonal = HashSet::new();
        let zero = vec![0u32; n];
        diagonal.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            for g in &dgens {
                let w: Vec<u32> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
                if diagonal.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        MonomialGroup { n, m, gens, transversal, diagonal }
    }

    /// Reads monomial generators from a group description.
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        let m = if spec.conductor.is_multiple_of(2) { spec.conductor } else { 2 * spec.conductor };
        let gens = spec
            .generators
            .iter()
            .map(|g| MonomialElement::from_matrix(g, m).ok_or(GroupError::NotMonomial))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(spec.dim, m, gens))
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MonomialElement] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.transversal.len() as u128 * self.diagonal.len() as u128
    }

    pub fn permutation_image_order(&self) -> usize {
        self.transversal.len()
    }

    pub fn diagonal_order(&self) -> usize {
        self.diagonal.len()
    }

    pub fn contains(&self, x: &MonomialElement) -> bool {
        match self.transversal.get(&x.perm) {
            None => false,
            Some(t) => self.diagonal.contains(&x.mul(&t.inverse(self.m), self.m).exps),
        }
    }

    /// Every element whose permutation part is `perm`.
    pub fn elements_over<'a>(&'a self, perm: &[u8]) -> impl Iterator<Item = MonomialElement> + 'a {
        let t = self.transversal.get(perm).cloned();
        self.diagonal.iter().filter_map(move |d| {
            let t = t.as_ref()?;
            let dm = MonomialElement { perm: (0..self.n as u8).collect(), exps: d.clone() };
            Some(dm.mul(t, self.m))
        })
    }

    /// Permutation images, in no particular order.
    pub fn permutations(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.transversal.keys()
    }

    /// Normal closure of one element.
    pub fn normal_closure(&self, x: &MonomialElement) -> MonomialGroup {
        let mut hgens = vec![x.clone()];
        loop {
            let h = MonomialGroup::new(self.n, self.m, hgens.clone());
            let mut added = false;
            for g in &self.gens {
                let gi = g.inverse(self.m);
                for y in hgens.clone() {
                    let c = g.mul(&y, self.m).mul(&gi, self.m);
                    if !h.contains(&c) && !hgens.contains(&c) {
                        hgens.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return h;
            }
        }
    }

    /// Non-diagonal elements that are complex reflections up to a scalar.
    ///
    /// An `L`-cycle contributes `L` distinct eigenvalues, so such an element
    /// can only have a single transposition as permutation part.
    pub fn nondiagonal_projective_reflections(&self) -> Vec<MonomialElement> {
        let mut out = Vec::new();
        for p in self.transversal.keys() {
            let moved = p.iter().enumerate().filter(|(j, &q)| q as usize != *j).count();
            if moved != 2 {
                continue;
            }
            for x in self.elements_over(p) {
                if is_projective_reflection(&x.spectrum(self.m)) {
                    out.push(x);
                }
            }
        }
        out
    }
}

/// All angles but one coincide.
pub(crate) fn is_projective_reflection(s: &Spectrum) -> bool {
    let a = s.angles();
    let n = a.len();
    if n < 2 {
        return false;
    }
    let distinct = s.distinct_count();
    if distinct != 2 {
        return false;
    }
    let first_run = a.iter().take_while(|&&x| x == a[0]).count();
    first_run == 1 || first_run == n - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_product_matches_matrices() {
        let m = 6;
        let a = MonomialElement { perm: vec![1, 0, 2], exps: vec![1, 0, 3] };
        let b = MonomialElement { perm: vec![0, 2, 1], exps: vec![2, 5, 0] };
        assert_eq!(a.mul(&b, m).to_matrix(m), a.to_matrix(m).mul(&b.to_matrix(m)));
        assert!(a.mul(&a.inverse(m), m).is_diagonal());
        assert_eq!(a.mul(&a.inverse(m), m), MonomialElement::identity(3));
    }

    #[test]
    fn spectrum_matches_matrix() {
        let m = 6;
        let a = MonomialElement { perm: vec![1, 2, 0, 3], exps: vec![1, 0, 3, 2] };
        assert_eq!(a.spectrum(m), a.to_matrix(m).spectrum(100).unwrap());
    }

    #[test]
    fn orders_of_imprimitive_groups() {
        // G(3,1,2): diag(w,1) and the swap; order 18.
        let m = 3;
        let t = MonomialElement { perm: vec![0, 1], exps: vec![1, 0] };
        let s = MonomialElement { perm: vec![1, 0], exps: vec![0, 0] };
        let g = MonomialGroup::new(2, m, vec![t, s]);
        assert_eq!(g.order(), 18);
        assert_eq!(g.diagonal_order(), 9);
    }

    #[test]
    fn projective_reflection_shape() {
        let s = Spectrum::from_pairs(&[(1, 3), (1, 3), (1, 3), (1, 2)]).unwrap();
        assert!(is_projective_reflection(&s));
        let s = Spectrum::from_pairs(&[(1, 3), (1, 3), (1, 2), (1, 2)]).unwrap();
        assert!(!is_projective_reflection(&s));
    }
}
