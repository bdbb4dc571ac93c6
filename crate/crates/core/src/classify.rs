//! Element taxonomy and group verdicts.
//!
//! Element-level functions look only at a [`Spectrum`]. Group-level functions
//! take an enumerated [`FiniteMatrixGroup`] and work class by class.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::angle::{DeviationValue, Spectrum};
use crate::group::FiniteMatrixGroup;
use crate::ser;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("the group is reducible")]
    ReducibleGroup,
    #[error("budget {0} is below 4")]
    BudgetTooSmall(f64),
    #[error("no scalar multiple has order at most 5 (projective order {0})")]
    OrderOutOfRange(u64),
    #[error("the element is scalar")]
    ScalarElement,
    #[error("dimension {0} is below 4")]
    DimensionTooSmall(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Scalar,
    ComplexReflection,
    Reflection,
    ComplexBireflection,
    Bireflection,
    Other,
}

/// The spectra `(a1)` to `(c6)` of junior elements in small-age tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumType {
    A1,
    A2,
    A3,
    A4,
    A5,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

struct Pattern {
    ty: SpectrumType,
    nonzero: &'static [(i64, i64)],
    /// `None` when any number of trailing zeros is allowed.
    dim: Option<usize>,
    galois: bool,
}

const fn pat(ty: SpectrumType, nonzero: &'static [(i64, i64)], dim: Option<usize>, galois: bool) -> Pattern {
    Pattern { ty, nonzero, dim, galois }
}

const PATTERNS: [Pattern; 19] = [
    pat(SpectrumType::A1, &[(1, 2)], None, false),
    pat(SpectrumType::A2, &[(1, 3)], Some(4), false),
    pat(SpectrumType::A3, &[(2, 3)], Some(4), false),
    pat(SpectrumType::A4, &[(1, 3), (1, 3)], None, false),
    pat(SpectrumType::A5, &[(1, 6), (1, 2)], Some(4), false),
    pat(SpectrumType::B1, &[(1, 2), (1, 2)], None, false),
    pat(SpectrumType::B2, &[(1, 3), (2, 3)], None, false),
    pat(SpectrumType::B3, &[(1, 3), (1, 3), (1, 3)], None, false),
    pat(SpectrumType::B4, &[(1, 4), (3, 4)], Some(4), false),
    pat(SpectrumType::B5, &[(1, 6), (1, 3), (1, 2)], Some(4), false),
    pat(SpectrumType::B6, &[(1, 6), (1, 6), (2, 3)], Some(4), false),
    pat(SpectrumType::B7, &[(1, 7), (2, 7), (4, 7)], Some(4), true),
    pat(SpectrumType::B8, &[(1, 12), (1, 3), (7, 12)], Some(4), true),
    pat(SpectrumType::C1, &[(1, 4), (1, 4)], Some(4), false),
    pat(SpectrumType::C2, &[(1, 8), (1, 4), (5, 8)], Some(4), true),
    pat(SpectrumType::C3, &[(1, 8), (3, 8), (1, 2)], Some(4), true),
    pat(SpectrumType::C4, &[(1, 5), (2, 5), (2, 5)], Some(5), true),
    pat(SpectrumType::C5, &[(1, 5), (1, 5), (3, 5)], Some(5), true),
    pat(SpectrumType::C6, &[(1, 4), (1, 4), (1, 4), (1, 4)], Some(8), false),
];

impl SpectrumType {
    pub const ALL: [SpectrumType; 19] = {
        let mut out = [SpectrumType::A1; 19];
        let mut i = 0;
        while i < 19 {
            out[i] = PATTERNS[i].ty;
            i += 1;
        }
        out
    };

    fn pattern(self) -> &'static Pattern {
        PATTERNS.iter().find(|p| p.ty == self).unwrap()
    }

    /// The listed spectrum in dimension `dim`, if the type exists there.
    pub fn spectrum(self, dim: usize) -> Option<Spectrum> {
        let p = self.pattern();
        let ok = match p.dim {
            Some(d) => d == dim,
            None => dim > p.nonzero.len(),
        };
        if !ok {
            return None;
        }
        let mut v: Vec<Rational64> = p.nonzero.iter().map(|&(a, b)| Rational64::new(a, b)).collect();
        v.resize(dim, Rational64::zero());
        Spectrum::new(v).ok()
    }

    pub fn as_str(self) -> &'static str {
        use SpectrumType::*;
        match self {
            A1 => "a1",
            A2 => "a2",
            A3 => "a3",
            A4 => "a4",
            A5 => "a5",
            B1 => "b1",
            B2 => "b2",
            B3 => "b3",
            B4 => "b4",
            B5 => "b5",
            B6 => "b6",
            B7 => "b7",
            B8 => "b8",
            C1 => "c1",
            C2 => "c2",
            C3 => "c3",
            C4 => "c4",
            C5 => "c5",
            C6 => "c6",
        }
    }
}

impl fmt::Display for SpectrumType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SpectrumType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SpectrumType::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| format!("unknown spectrum type `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClassification {
    pub kind: ElementKind,
    pub junior: bool,
    pub spectrum_type: Option<SpectrumType>,
    #[serde(with = "ser::ratio")]
    pub age: Rational64,
    #[serde(with = "ser::ratio")]
    pub age_star: Rational64,
}

/// Smallest sorted angle vector among the shifts of `s` by its own angles.
/// Two spectra differ by a scalar exactly when these agree.
fn shift_canonical(s: &Spectrum) -> Vec<Rational64> {
    let mut d = s.angles().to_vec();
    d.dedup();
    d.into_iter().map(|t| s.shifted(t).angles().to_vec()).min().unwrap()
}

fn literal_kind(s: &Spectrum) -> ElementKind {
    let half = Rational64::new(1, 2);
    if s.is_scalar() {
        return ElementKind::Scalar;
    }
    let nz: Vec<Rational64> = s.angles().iter().copied().filter(|r| !r.is_zero()).collect();
    match nz.as_slice() {
        [r] if *r == half => ElementKind::Reflection,
        [_] => ElementKind::ComplexReflection,
        [a, b] if *a == half && *b == half => ElementKind::Bireflection,
        [a, b] if *a + *b == Rational64::one() => ElementKind::ComplexBireflection,
        _ => ElementKind::Other,
    }
}

/// Matches `s` up to a scalar multiple against the listed junior spectra.
pub fn spectrum_type(s: &Spectrum) -> Option<SpectrumType> {
    if s.is_scalar() {
        return None;
    }
    let canon = shift_canonical(s);
    let exact = PATTERNS.iter().find(|p| p.ty.spectrum(s.dim()).is_some_and(|b| shift_canonical(&b) == canon));
    if let Some(p) = exact {
        return Some(p.ty);
    }
    // Some listed spectra are Galois conjugate to each other (c4 and c5), so
    // conjugates are only tried once no exact match exists.
    PATTERNS.iter().filter(|p| p.galois).find_map(|p| {
        let base = p.ty.spectrum(s.dim())?;
        let n = base.order() as i64;
        (2..n).filter(|u| u.gcd(&n) == 1).any(|u| shift_canonical(&base.galois(u)) == canon).then_some(p.ty)
    })
}

pub fn classify_element(s: &Spectrum) -> ElementClassification {
    let age = s.age();
    ElementClassification {
        kind: literal_kind(s),
        junior: age > Rational64::zero() && age <= Rational64::one(),
        spectrum_type: spectrum_type(s),
        age,
        age_star: s.age_star().value,
    }
}

/// Which alternative of the small-order list a spectrum falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallOrderCase {
    /// Some scalar multiple is a complex reflection.
    ComplexReflection,
    /// `m = 2` and the element is a bireflection up to a scalar.
    Bireflection,
    /// A scalar multiple matches one of the age below 1 forms.
    A,
    /// A scalar multiple matches one of the age 1 forms.
    B,
    /// Every scalar multiple has age above 1.
    AgeStarAboveOne,
    /// age* is at most 1 but no listed form matches.
    Unmatched,
}

/// Bound from `k` eigenvalue pairs `(a, -a)`: age* is at least `k/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedBound {
    pub pairs: usize,
    #[serde(with = "ser::ratio")]
    pub bound: Rational64,
    pub attained: bool,
    pub distinct_angles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallOrderReport {
    /// Least order of a scalar multiple.
    pub order: u64,
    pub case: SmallOrderCase,
    /// Roman-numeral name of the case, e.g. `(ii)(a)`.
    pub label: String,
    /// Shift (in turns) taking the spectrum to the matched form.
    #[serde(with = "ser::ratio")]
    pub shift: Rational64,
    /// The matched form, when one matched.
    pub form: Option<Spectrum>,
    #[serde(with = "ser::ratio")]
    pub age_star: Rational64,
    pub paired: Option<PairedBound>,
}

/// Nonzero parts of the listed forms, as numerators over `m`.
fn small_forms(m: u64) -> (&'static [&'static [i64]], &'static [&'static [i64]]) {
    match m {
        2 => (&[], &[&[1, 1]]),
        3 => (&[&[1, 1]], &[&[1, 2], &[1, 1, 1]]),
        4 => (&[&[1, 1], &[1, 1, 1], &[1, 2]], &[&[1, 3], &[2, 2], &[1, 1, 2], &[1, 1, 1, 1]]),
        5 => (
            &[&[1, 1], &[2, 2], &[1, 1, 1], &[1, 1, 1, 1], &[1, 2], &[1, 3], &[1, 1, 2]],
            &[&[1, 4], &[2, 3], &[1, 2, 2], &[1, 1, 3], &[1, 1, 1, 2], &[1, 1, 1, 1, 1]],
        ),
        _ => (&[], &[]),
    }
}

fn form_spectrum(m: u64, nums: &[i64], dim: usize) -> Option<Spectrum> {
    if nums.len() >= dim {
        return None;
    }
    let mut v: Vec<Rational64> = nums.iter().map(|&k| Rational64::new(k, m as i64)).collect();
    v.resize(dim, Rational64::zero());
    Spectrum::new(v).ok()
}

fn paired_bound(s: &Spectrum, age_star: Rational64) -> Option<PairedBound> {
    let half = Rational64::new(1, 2);
    let mut counts = std::collections::BTreeMap::<Rational64, usize>::new();
    for &r in s.angles() {
        *counts.entry(r).or_default() += 1;
    }
    let pairs: usize = counts
        .iter()
        .filter(|(r, _)| **r < half)
        .map(|(r, &c)| c.min(counts.get(&(*r + half)).copied().unwrap_or(0)))
        .sum();
    if pairs == 0 {
        return None;
    }
    let bound = Rational64::new(pairs as i64, 2);
    Some(PairedBound { pairs, bound, attained: age_star == bound, distinct_angles: s.distinct_count() })
}

/// Places a spectrum whose projective order is at most 5 in the small-order
/// list, or certifies that every scalar multiple has age above 1.
pub fn classify_small_order(s: &Spectrum) -> Result<SmallOrderReport, ClassifyError> {
    if s.dim() < 4 {
        return Err(ClassifyError::DimensionTooSmall(s.dim()));
    }
    if s.is_scalar() {
        return Err(ClassifyError::ScalarElement);
    }
    let m = s.projective_order();
    if m > 5 {
        return Err(ClassifyError::OrderOutOfRange(m));
    }
    let star = s.age_star();
    let paired = paired_bound(s, star.value);
    let mut report = SmallOrderReport {
        order: m,
        case: SmallOrderCase::AgeStarAboveOne,
        label: "age* > 1".into(),
        shift: star.shift,
        form: None,
        age_star: star.value,
        paired,
    };
    if star.value > Rational64::one() {
        return Ok(report);
    }
    let roman = ["", "", "(i)", "(ii)", "(iii)", "(iv)"][m as usize];
    let mut shifts = s.angles().to_vec();
    shifts.dedup();
    for &t in &shifts {
        let g = s.shifted(t);
        if g.nonzero_count() == 1 {
            report.case = SmallOrderCase::ComplexReflection;
            report.label = "complex reflection".into();
            report.shift = t;
            report.form = Some(g);
            return Ok(report);
        }
    }
    let (a_forms, b_forms) = small_forms(m);
    for (forms, case, suffix) in [(a_forms, SmallOrderCase::A, "(a)"), (b_forms, SmallOrderCase::B, "(b)")] {
        for nums in forms {
            let Some(f) = form_spectrum(m, nums, s.dim()) else { continue };
            // For m = 4 the choice of the square root of -1 is free.
            let variants = if m == 4 { vec![f.clone(), f.inverse()] } else { vec![f.clone()] };
            for &t in &shifts {
                let g = s.shifted(t);
                if variants.contains(&g) {
                    report.case = if m == 2 { SmallOrderCase::Bireflection } else { case };
                    report.label = if m == 2 { roman.to_string() } else { format!("{roman}{suffix}") };
                    report.shift = t;
                    report.form = Some(f);
                    return Ok(report);
                }
            }
        }
    }
    report.case = SmallOrderCase::Unmatched;
    report.label = "unmatched".into();
    Ok(report)
}

/// Ages of non-identity elements against the threshold 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReidTaiVerdict {
    pub terminal: bool,
    pub canonical: bool,
    #[serde(with = "ser::opt_ratio")]
    pub min_age: Option<Rational64>,
    pub has_complex_reflection: bool,
    /// Set when complex reflections are present, so the criterion does not apply as stated.
    pub advisory: bool,
}

pub fn reid_tai(g: &FiniteMatrixGroup) -> ReidTaiVerdict {
    let nontrivial = g.classes().iter().filter(|c| c.representative != 0);
    let min_age = nontrivial.clone().map(|c| c.spectrum.age()).min();
    let has_cr = nontrivial.clone().any(|c| c.spectrum.nonzero_count() == 1);
    let one = Rational64::one();
    ReidTaiVerdict {
        terminal: min_age.is_none_or(|a| a > one),
        canonical: min_age.is_none_or(|a| a >= one),
        min_age,
        has_complex_reflection: has_cr,
        advisory: has_cr,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuniorGeneration {
    pub generated: bool,
    /// The group is scalar, so the statement holds vacuously.
    pub degenerate: bool,
    /// Number of non-scalar elements with `0 < age* <= 1` (or `< 1` when strict).
    pub junior_elements: usize,
}

/// Whether the non-scalar elements of small age* generate the group modulo scalars.
pub fn junior_generation(g: &FiniteMatrixGroup, strict: bool) -> JuniorGeneration {
    let one = Rational64::one();
    let mut members = Vec::new();
    for c in g.classes() {
        let a = c.spectrum.age_star().value;
        let ok = a > Rational64::zero() && if strict { a < one } else { a <= one };
        if ok {
            members.extend(c.members.iter().map(|&m| m as usize));
        }
    }
    let count = members.len();
    let degenerate = g.projective_order() == 1;
    let h = g.generate(members);
    JuniorGeneration { generated: g.covers_mod_scalars(&h), degenerate, junior_elements: count }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicNonRt {
    True,
    False,
    NoWitness,
}

/// Reading of the age condition in [`basic_non_rt`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicMode {
    /// `age(g) < 1`, and `g` must normally generate `G`.
    #[default]
    Literal,
    /// `age*(g) < 1`, and `g` must normally generate `G` modulo scalars.
    Projective,
}

/// Whether every non-central element of age below 1 normally generates the group.
pub fn basic_non_rt(g: &FiniteMatrixGroup, mode: BasicMode) -> Result<BasicNonRt, ClassifyError> {
    if !g.is_irreducible() {
        return Err(ClassifyError::ReducibleGroup);
    }
    let one = Rational64::one();
    let mut witnesses = 0;
    for c in g.classes() {
        if g.is_central(c.representative) {
            continue;
        }
        let small = match mode {
            BasicMode::Literal => c.spectrum.age() < one,
            BasicMode::Projective => c.spectrum.age_star().value < one,
        };
        if !small {
            continue;
        }
        witnesses += 1;
        let h = g.normal_closure(c.representative);
        let full = match mode {
            BasicMode::Literal => h.order() == g.order(),
            BasicMode::Projective => g.covers_mod_scalars(&h),
        };
        if !full {
            return Ok(BasicNonRt::False);
        }
    }
    Ok(if witnesses == 0 { BasicNonRt::NoWitness } else { BasicNonRt::True })
}

/// `max(4 C^2 / 63, 40 C)`.
pub fn f_threshold(c: f64) -> Result<f64, ClassifyError> {
    if c.is_nan() || c < 4.0 {
        return Err(ClassifyError::BudgetTooSmall(c));
    }
    Ok((4.0 * c * c / 63.0).max(40.0 * c))
}

/// Exact test of `value <= c`, falling back to the certified approximation.
pub fn deviation_at_most(value: &DeviationValue, c: f64) -> bool {
    if let Some((a, b)) = value.surd() {
        let cq = Rational::from_f64(c).expect("finite budget");
        let x = a - cq;
        return x.cmp0() != std::cmp::Ordering::Greater || Rational::from(&x * &x) <= b;
    }
    let v = value.to_f64();
    let e = value.error_bound();
    if v + e <= c {
        true
    } else if v - e > c {
        false
    } else {
        let mut cf = rug::Float::with_val(value.approx().prec(), c);
        cf -= value.approx();
        cf.cmp0() != Some(std::cmp::Ordering::Less)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationGenerationReport {
    pub budget: f64,
    /// Indices of classes whose elements satisfy `d2^2 <= budget`.
    pub qualifying_classes: Vec<usize>,
    pub qualifying_elements: usize,
    pub generates_mod_scalars: bool,
    pub dim: usize,
    pub threshold: f64,
    pub dim_within_threshold: bool,
}

pub fn deviation_generation_report(g: &FiniteMatrixGroup, c: f64) -> Result<DeviationGenerationReport, ClassifyError> {
    let threshold = f_threshold(c)?;
    let mut classes = Vec::new();
    let mut members = Vec::new();
    for cl in g.classes() {
        if deviation_at_most(&cl.spectrum.d2_squared(), c) {
            classes.push(cl.index);
            members.extend(cl.members.iter().map(|&m| m as usize));
        }
    }
    let count = members.len();
    let h = g.generate(members);
    Ok(DeviationGenerationReport {
        budget: c,
        qualifying_classes: classes,
        qualifying_elements: count,
        generates_mod_scalars: g.covers_mod_scalars(&h),
        dim: g.dim(),
        threshold,
        dim_within_threshold: (g.dim() as f64) <= threshold,
    })
}

/// All group-level verdicts together.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupVerdict {
    pub terminal: bool,
    pub canonical: bool,
    pub has_complex_reflection: bool,
    pub advisory: bool,
    pub junior_generated_mod_scalars: bool,
    pub strict_junior_generated_mod_scalars: bool,
    /// `None` for reducible groups.
    pub basic_non_rt: Option<BasicNonRt>,
    pub basic_non_rt_projective: Option<BasicNonRt>,
    /// `dim <= f(C)` for the given budget, when the qualifying elements
    /// generate an irreducible group modulo scalars.
    pub theorem1_bound_ok: Option<bool>,
}

pub fn group_verdict(g: &FiniteMatrixGroup, budget: Option<f64>) -> GroupVerdict {
    let rt = reid_tai(g);
    let irreducible = g.is_irreducible();
    let basic = |mode| irreducible.then(|| basic_non_rt(g, mode).expect("irreducible"));
    // Conclusion (i) of the bound, reported only when its hypotheses hold.
    let theorem1 = budget
        .and_then(|c| deviation_generation_report(g, c).ok())
        .filter(|r| irreducible && r.generates_mod_scalars)
        .map(|r| r.dim_within_threshold);
    GroupVerdict {
        terminal: rt.terminal,
        canonical: rt.canonical,
        has_complex_reflection: rt.has_complex_reflection,
        advisory: rt.advisory,
        junior_generated_mod_scalars: junior_generation(g, false).generated,
        strict_junior_generated_mod_scalars: junior_generation(g, true).generated,
        basic_non_rt: basic(BasicMode::Literal),
        basic_non_rt_projective: basic(BasicMode::Projective),
        theorem1_bound_ok: theorem1,
    }
}
