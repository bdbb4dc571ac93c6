//! Finite matrix groups over cyclotomic fields.
//!
//! [`closure`] enumerates a group from its generators. The resulting
//! [`FiniteMatrixGroup`] answers questions about products, inverses,
//! conjugacy classes, generated subgroups and covering numbers, all exactly.
//! Work modulo scalars uses the cosets of the group's own scalar subgroup.

mod closure;
mod io;
mod monomial;
pub(crate) mod packed;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::Rational64;
use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::angle::Spectrum;
use crate::cyclo::{CycloError, CycloMatrix, CycloNum};
use closure::{right_table, Arena};
use packed::{Layout, Sparse};

pub use monomial::{MonomialElement, MonomialGroup};

/// Default limit on the number of elements enumerated by [`closure`].
pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group description: {0}")]
    Schema(String),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("group has more than {0} elements")]
    ClosureExceedsCap(usize),
    #[error("matrix coefficients exceed the packed range")]
    CoefficientOverflow,
    #[error("product left the enumerated set")]
    NotClosed,
    #[error("the class does not generate the group modulo scalars")]
    NotGeneratingClass,
    #[error("covering number exceeds {0}")]
    BetaExceedsCap(usize),
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("generators are not monomial")]
    NotMonomial,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Optional structural annotations carried with a group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Blocks of coordinate indices permuted by the group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_system: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    /// Factor dimensions of a tensor decomposition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_structure: Option<Vec<usize>>,
}

/// Generators of a matrix group over `Q(zeta_conductor)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub dim: usize,
    pub conductor: u32,
    pub generators: Vec<CycloMatrix>,
    pub metadata: GroupMetadata,
}

impl GroupSpec {
    /// Conductor is the lcm of the generators' conductors.
    pub fn new(dim: usize, generators: Vec<CycloMatrix>, metadata: GroupMetadata) -> Result<Self, GroupError> {
        let n = generators.iter().fold(1, |a, g| crate::cyclo::poly::lcm(a, g.conductor()));
        Self::with_conductor(dim, n, generators, metadata)
    }

    pub fn with_conductor(
        dim: usize,
        conductor: u32,
        generators: Vec<CycloMatrix>,
        metadata: GroupMetadata,
    ) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::Schema("dimension must be positive".into()));
        }
        if conductor == 0 {
            return Err(GroupError::Schema("conductor must be positive".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.dim() != dim {
                return Err(GroupError::Schema(format!("generator {i} has dimension {}", g.dim())));
            }
            let g = g
                .embed(conductor)
                .map_err(|_| GroupError::Schema(format!("generator {i} needs a conductor dividing {conductor}")))?;
            gens.push(g);
        }
        Ok(GroupSpec { dim, conductor, generators: gens, metadata })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.metadata.label = Some(label.into());
        self
    }
}

/// A conjugacy class with its element order and eigen-angle spectrum.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub index: usize,
    pub label: String,
    pub representative: usize,
    pub size: usize,
    pub element_order: u64,
    pub spectrum: Spectrum,
    pub members: Vec<u32>,
}

struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

struct CosetData {
    coset_of: Vec<u32>,
    count: usize,
}

/// Elements of a subgroup, as indices into the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }
}

/// A fully enumerated finite matrix group.
pub struct FiniteMatrixGroup {
    spec: GroupSpec,
    arena: Arena,
    gens: Vec<Sparse>,
    left: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u16>,
    gen_index: Vec<u32>,
    scalars: Vec<u32>,
    right: OnceLock<Vec<Vec<u32>>>,
    right_inv: OnceLock<Vec<Vec<u32>>>,
    inverse: OnceLock<Vec<u32>>,
    classes: OnceLock<ClassData>,
    center: OnceLock<Vec<u32>>,
    cosets: OnceLock<CosetData>,
    proj_classes: OnceLock<Vec<u32>>,
}

/// Enumerates the group generated by `spec`, failing beyond `cap` elements.
pub fn closure(spec: &GroupSpec, cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    let layout = Layout::new(spec.dim, spec.conductor);
    let mut gens = Vec::with_capacity(spec.generators.len());
    for (i, g) in spec.generators.iter().enumerate() {
        if g.det().is_zero() {
            return Err(GroupError::NonInvertibleGenerator(i));
        }
        gens.push(Sparse::new(&layout, &layout.pack(g)?));
    }
    if gens.len() > u16::MAX as usize {
        return Err(GroupError::Schema("too many generators".into()));
    }
    let c = closure::close(layout, &gens, cap.max(1))?;
    let ng = gens.len();
    let gen_index = (0..ng).map(|g| c.left[g]).collect();
    let scalars = (0..c.arena.len()).filter(|&i| c.arena.layout.is_scalar(c.arena.get(i))).map(|i| i as u32).collect();
    Ok(FiniteMatrixGroup {
        spec: spec.clone(),
        arena: c.arena,
        gens,
        left: c.left,
        parent: c.parent,
        parent_gen: c.parent_gen,
        gen_index,
        scalars,
        right: OnceLock::new(),
        right_inv: OnceLock::new(),
        inverse: OnceLock::new(),
        classes: OnceLock::new(),
        center: OnceLock::new(),
        cosets: OnceLock::new(),
        proj_classes: OnceLock::new(),
    })
}

impl FiniteMatrixGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.arena.len()
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn conductor(&self) -> u32 {
        self.spec.conductor
    }

    /// Indices of the generators, in the order given.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.gen_index.iter().map(|&i| i as usize).collect()
    }

    pub fn element(&self, i: usize) -> CycloMatrix {
        self.arena.layout.unpack(self.arena.get(i))
    }

    pub fn index_of(&self, m: &CycloMatrix) -> Option<usize> {
        if m.dim() != self.dim() {
            return None;
        }
        let p = self.arena.layout.pack(m).ok()?;
        self.arena.find(&p).map(|i| i as usize)
    }

    pub fn trace(&self, i: usize) -> CycloNum {
        let (t, den) = self.arena.layout.trace(self.arena.get(i));
        let c = t.iter().map(|&x| Rational::from((x, den))).collect();
        CycloNum::from_powers(self.conductor(), c)
    }

    /// Scalar matrices in the group.
    pub fn scalar_indices(&self) -> &[u32] {
        &self.scalars
    }

    pub fn is_scalar(&self, i: usize) -> bool {
        self.arena.layout.is_scalar(self.arena.get(i))
    }

    fn right_tables(&self) -> &Vec<Vec<u32>> {
        self.right
            .get_or_init(|| self.gens.iter().map(|g| right_table(&self.arena, g).expect("group is closed")).collect())
    }

    fn right_inv_tables(&self) -> &Vec<Vec<u32>> {
        self.right_inv.get_or_init(|| {
            self.right_tables()
                .iter()
                .map(|t| {
                    let mut inv = vec![0u32; t.len()];
                    for (x, &y) in t.iter().enumerate() {
                        inv[y as usize] = x as u32;
                    }
                    inv
                })
                .collect()
        })
    }

    /// Index of the product `x * y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let r = self.right_tables();
        let (mut x, mut y) = (x as u32, y);
        while y != 0 {
            x = r[self.parent_gen[y] as usize][x as usize];
            y = self.parent[y] as usize;
        }
        x as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse.get_or_init(|| {
            let ri = self.right_inv_tables();
            let mut inv = vec![0u32; self.order()];
            for y in 1..self.order() {
                let p = self.parent[y] as usize;
                inv[y] = ri[self.parent_gen[y] as usize][inv[p] as usize];
            }
            inv
        })[x] as usize
    }

    /// `g x g^-1` for the `g`-th generator.
    fn conj_by_gen(&self, g: usize, x: usize) -> usize {
        let ng = self.gens.len();
        self.right_inv_tables()[g][self.left[x * ng + g] as usize] as usize
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut p = x;
        let mut k = 1u64;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.order();
        let ng = self.gens.len();
        if ng > 0 {
            self.right_inv_tables();
        }
        let mut raw_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            if raw_of[x] != u32::MAX {
                continue;
            }
            let cid = raw.len() as u32;
            raw_of[x] = cid;
            let mut members = vec![x as u32];
            let mut head = 0;
            while head < members.len() {
                let y = members[head] as usize;
                head += 1;
                for g in 0..ng {
                    let z = self.conj_by_gen(g, y);
                    if raw_of[z] == u32::MAX {
                        raw_of[z] = cid;
                        members.push(z as u32);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjClass> = raw
            .into_par_iter()
            .map(|members| {
                let rep = members[0] as usize;
                let order = self.element_order(rep);
                let spectrum = self.element(rep).spectrum_with_order(order).expect("finite order element");
                ConjClass {
                    index: 0,
                    label: String::new(),
                    representative: rep,
                    size: members.len(),
                    element_order: order,
                    spectrum,
                    members,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.element_order, a.spectrum.age(), a.size, a.representative).cmp(&(
                b.element_order,
                b.spectrum.age(),
                b.size,
                b.representative,
            ))
        });
        let mut class_of = vec![0u32; n];
        let mut letter = 0u32;
        for i in 0..classes.len() {
            if i > 0 && classes[i].element_order == classes[i - 1].element_order {
                letter += 1;
            } else {
                letter = 0;
            }
            classes[i].index = i;
            classes[i].label = format!("{}{}", classes[i].element_order, letter_code(letter));
            for &m in &classes[i].members {
                class_of[m as usize] = i as u32;
            }
        }
        ClassData { classes, class_of }
    }

    /// Conjugacy classes sorted by element order, then age, then size.
    pub fn classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_data().class_of[x] as usize
    }

    pub fn spectrum(&self, x: usize) -> &Spectrum {
        &self.classes()[self.class_of(x)].spectrum
    }

    /// Elements commuting with every generator.
    pub fn center_indices(&self) -> &[u32] {
        self.center.get_or_init(|| {
            let r = self.right_tables();
            let ng = self.gens.len();
            (0..self.order()).filter(|&x| (0..ng).all(|g| r[g][x] == self.left[x * ng + g])).map(|x| x as u32).collect()
        })
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.center_indices().binary_search(&(x as u32)).is_ok()
    }

    fn coset_data(&self) -> &CosetData {
        self.cosets.get_or_init(|| {
            let n = self.order();
            let mut coset_of = vec![u32::MAX; n];
            let mut count = 0u32;
            for x in 0..n {
                if coset_of[x] != u32::MAX {
                    continue;
                }
                for &s in &self.scalars {
                    coset_of[self.mul(x, s as usize)] = count;
                }
                count += 1;
            }
            CosetData { coset_of, count: count as usize }
        })
    }

    /// Index of `x` modulo the scalar subgroup.
    pub fn projective_index(&self, x: usize) -> usize {
        self.coset_data().coset_of[x] as usize
    }

    /// Order of the image in `PGL`.
    pub fn projective_order(&self) -> usize {
        self.coset_data().count
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, elements: impl IntoIterator<Item = usize>) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members = vec![0u32];
        let mut gens: Vec<usize> = Vec::new();
        for s in elements {
            if mask[s] {
                continue;
            }
            gens.push(s);
            // Old members only need the new generator; new members need all.
            let old = members.len();
            for i in 0..old {
                let y = self.mul(members[i] as usize, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y as u32);
                }
            }
            let mut head = old;
            while head < members.len() {
                let x = members[head] as usize;
                head += 1;
                for &t in &gens {
                    let y = self.mul(x, t);
                    if !mask[y] {
                        mask[y] = true;
                        members.push(y as u32);
                    }
                }
            }
        }
        Subgroup { members, mask }
    }

    /// Normal closure of a single element: the subgroup generated by its class.
    pub fn normal_closure(&self, x: usize) -> Subgroup {
        let c = &self.classes()[self.class_of(x)];
        self.generate(c.members.iter().map(|&m| m as usize))
    }

    /// Whether a subgroup maps onto the whole group modulo scalars.
    pub fn covers_mod_scalars(&self, h: &Subgroup) -> bool {
        let cd = self.coset_data();
        let mut seen = vec![false; cd.count];
        let mut hit = 0;
        for &m in &h.members {
            let c = cd.coset_of[m as usize] as usize;
            if !seen[c] {
                seen[c] = true;
                hit += 1;
            }
        }
        hit == cd.count
    }

    /// Orbits of conjugacy classes under multiplication by scalars.
    fn projective_classes(&self) -> &Vec<u32> {
        self.proj_classes.get_or_init(|| {
            let cls = self.classes();
            let mut pc = vec![u32::MAX; cls.len()];
            let mut next = 0u32;
            for c in 0..cls.len() {
                if pc[c] != u32::MAX {
                    continue;
                }
                for &s in &self.scalars {
                    pc[self.class_of(self.mul(cls[c].representative, s as usize))] = next;
                }
                next += 1;
            }
            pc
        })
    }

    /// Least `k` such that products of at most `k` elements of the class
    /// cover the group modulo scalars.
    pub fn covering_beta(&self, class: usize, cap: usize) -> Result<usize, GroupError> {
        let cls = self.classes();
        let pc = self.projective_classes();
        let npc = pc.iter().map(|&p| p as usize + 1).max().unwrap_or(0);
        let mut reached = vec![false; npc];
        let start = pc[self.class_of(0)] as usize;
        reached[start] = true;
        let mut count = 1;
        let mut frontier = vec![start];
        let mut pc_rep = vec![usize::MAX; npc];
        for (i, c) in cls.iter().enumerate() {
            let p = pc[i] as usize;
            if pc_rep[p] == usize::MAX {
                pc_rep[p] = c.representative;
            }
        }
        let members = &cls[class].members;
        let mut level = 0;
        while count < npc {
            if frontier.is_empty() {
                return Err(GroupError::NotGeneratingClass);
            }
            level += 1;
            if level > cap {
                return Err(GroupError::BetaExceedsCap(cap));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let u = pc_rep[p];
                for &c in members {
                    let q = pc[self.class_of(self.mul(u, c as usize))] as usize;
                    if !reached[q] {
                        reached[q] = true;
                        count += 1;
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        Ok(level)
    }

    /// `2 pi` times the least angle norm of a non-identity element.
    pub fn min_geodesic(&self) -> Result<f64, GroupError> {
        let m = self
            .classes()
            .iter()
            .filter(|c| c.representative != 0)
            .map(|c| c.spectrum.norm_metric_sq())
            .min()
            .ok_or(GroupError::TrivialGroup)?;
        Ok(std::f64::consts::TAU * crate::angle::rat_f64(m).sqrt())
    }

    /// Exact irreducibility test: the mean of `|Tr g|^2` over the group equals 1.
    pub fn is_irreducible(&self) -> bool {
        self.mean_abs_trace_sq() == 1
    }

    /// `(1/|G|) sum |Tr g|^2`, computed in one pass over the elements.
    pub fn mean_abs_trace_sq(&self) -> Rational {
        let l = &self.arena.layout;
        let sums: BTreeMap<i64, Vec<i128>> = (0..self.order())
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<i64, Vec<i128>>, i| {
                let (t, den) = l.trace(self.arena.get(i));
                let sq = l.abs_sq_poly(&t);
                let slot = acc.entry(den).or_insert_with(|| vec![0; l.phi]);
                for (a, b) in slot.iter_mut().zip(sq) {
                    *a += b;
                }
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    let slot = a.entry(k).or_insert_with(|| vec![0; v.len()]);
                    for (x, y) in slot.iter_mut().zip(v) {
                        *x += y;
                    }
                }
                a
            });
        let mut total = CycloNum::zero(self.conductor());
        for (den, v) in sums {
            let d2 = rug::Integer::from(den) * den;
            let c = v.into_iter().map(|x| Rational::from((rug::Integer::from(x), d2.clone()))).collect();
            total = &total + &CycloNum::from_powers(self.conductor(), c);
        }
        let q = total.as_rational().expect("sum of |Tr|^2 is rational");
        q / Rational::from(self.order())
    }

    /// Whether some element has trace exactly zero.
    pub fn has_zero_trace_element(&self) -> bool {
        let l = &self.arena.layout;
        (0..self.order()).into_par_iter().any(|i| l.trace(self.arena.get(i)).0.iter().all(|&x| x == 0))
    }

    /// Age-star of an element, read from its class.
    pub fn age_star(&self, x: usize) -> Rational64 {
        self.spectrum(x).age_star().value
    }
}

fn letter_code(mut k: u32) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}
