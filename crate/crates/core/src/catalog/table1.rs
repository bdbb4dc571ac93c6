//! Class spectra of small-age elements in almost quasi-simple groups.
//!
//! Each record pairs a class with an eigen-angle spectrum and the expected
//! trace deviation and age*. [`verify_table1`] recomputes both exactly.

use std::path::Path;

use num_rational::Rational64;
use rug::Rational;
use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::angle::Spectrum;
use crate::ser;

/// Expected deviation: a rational, or `a - sqrt(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaDescriptor {
    Rational(Rational64),
    Surd(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpectrumRecord {
    pub group_label: String,
    pub dim: usize,
    pub class_label: String,
    pub spectrum: Spectrum,
    pub expected_delta: DeltaDescriptor,
    pub expected_age_star: Rational64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupEntry {
    group: String,
    dim: usize,
    classes: Vec<ClassEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassEntry {
    label: String,
    spectrum: Vec<String>,
    delta: DeltaEntry,
    #[serde(with = "ser::ratio")]
    age_star: Rational64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum DeltaEntry {
    Rational(#[serde(with = "ser::ratio")] Rational64),
    Surd([i64; 2]),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileShape {
    Many(Vec<GroupEntry>),
    One(GroupEntry),
}

fn schema(msg: impl Into<String>) -> CatalogError {
    CatalogError::Schema(msg.into())
}

/// Parses class-spectrum JSON: an array of group objects, or a single one.
pub fn parse_class_spectra(text: &str) -> Result<Vec<ClassSpectrumRecord>, CatalogError> {
    let shape: FileShape = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    let groups = match shape {
        FileShape::Many(v) => v,
        FileShape::One(g) => vec![g],
    };
    let mut out = Vec::new();
    for g in groups {
        if g.dim == 0 {
            return Err(schema(format!("{}: dimension must be positive", g.group)));
        }
        for c in g.classes {
            let spectrum =
                Spectrum::from_strings(&c.spectrum).map_err(|e| schema(format!("{} {}: {e}", g.group, c.label)))?;
            if spectrum.dim() != g.dim {
                return Err(schema(format!(
                    "{} {}: spectrum has {} angles, expected {}",
                    g.group,
                    c.label,
                    spectrum.dim(),
                    g.dim
                )));
            }
            let expected_delta = match c.delta {
                DeltaEntry::Rational(q) => DeltaDescriptor::Rational(q),
                DeltaEntry::Surd([a, b]) => {
                    if b < 0 {
                        return Err(schema(format!("{} {}: negative radicand", g.group, c.label)));
                    }
                    DeltaDescriptor::Surd(a, b)
                }
            };
            out.push(ClassSpectrumRecord {
                group_label: g.group.clone(),
                dim: g.dim,
                class_label: c.label,
                spectrum,
                expected_delta,
                expected_age_star: c.age_star,
            });
        }
    }
    Ok(out)
}

pub fn load_class_spectra(path: impl AsRef<Path>) -> Result<Vec<ClassSpectrumRecord>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_class_spectra(&text)
}

/// Serializes records, grouping consecutive records with the same group and dimension.
pub fn to_json(records: &[ClassSpectrumRecord]) -> String {
    let mut groups: Vec<GroupEntry> = Vec::new();
    for r in records {
        let class = ClassEntry {
            label: r.class_label.clone(),
            spectrum: r.spectrum.to_strings(),
            delta: match r.expected_delta {
                DeltaDescriptor::Rational(q) => DeltaEntry::Rational(q),
                DeltaDescriptor::Surd(a, b) => DeltaEntry::Surd([a, b]),
            },
            age_star: r.expected_age_star,
        };
        match groups.last_mut() {
            Some(g) if g.group == r.group_label && g.dim == r.dim => g.classes.push(class),
            _ => groups.push(GroupEntry { group: r.group_label.clone(), dim: r.dim, classes: vec![class] }),
        }
    }
    let mut s = serde_json::to_string_pretty(&groups).expect("serializable");
    s.push('\n');
    s
}

const BUNDLED: &str = include_str!("../../data/table1.json");
const ERRATA: &str = include_str!("../../data/table1_errata.json");

/// The bundled dataset.
pub fn bundled_table1() -> Vec<ClassSpectrumRecord> {
    parse_class_spectra(BUNDLED).expect("bundled dataset parses")
}

/// Printed cells that disagree with their own spectra; kept apart from the
/// main dataset and expected to fail verification.
pub fn bundled_table1_errata() -> Vec<ClassSpectrumRecord> {
    parse_class_spectra(ERRATA).expect("bundled errata parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub group: String,
    pub dim: usize,
    pub class: String,
    pub spectrum: Spectrum,
    #[serde(with = "ser::ratio")]
    pub age_star: Rational64,
    pub age_star_ok: bool,
    /// The recomputed deviation, exact when possible.
    pub delta: String,
    /// Recomputed `|Tr|^2` when rational.
    pub abs_trace_sq: Option<String>,
    pub delta_ok: bool,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.age_star_ok && self.delta_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub rows: Vec<RowCheck>,
}

impl Table1Report {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.ok())
    }

    pub fn is_ok(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

fn check_row(r: &ClassSpectrumRecord) -> RowCheck {
    let s = &r.spectrum;
    let age_star = s.age_star().value;
    let delta = s.delta();
    let abs_sq = s.trace().abs_sq().as_rational();
    let delta_ok = match r.expected_delta {
        DeltaDescriptor::Rational(q) => delta.exact_rational() == Some(Rational::from((*q.numer(), *q.denom()))),
        DeltaDescriptor::Surd(a, b) => {
            // a - sqrt(b) with a = dim means |Tr|^2 = b.
            delta.equals_surd(&Rational::from(a), &Rational::from(b))
        }
    };
    RowCheck {
        group: r.group_label.clone(),
        dim: r.dim,
        class: r.class_label.clone(),
        spectrum: s.clone(),
        age_star,
        age_star_ok: age_star == r.expected_age_star,
        delta: delta.to_string(),
        abs_trace_sq: abs_sq.map(|q| q.to_string()),
        delta_ok,
    }
}

/// Recomputes age* and the deviation of every record.
pub fn verify_table1(records: &[ClassSpectrumRecord]) -> Table1Report {
    Table1Report { rows: records.iter().map(check_row).collect() }
}
