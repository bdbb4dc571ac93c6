use agelab::angle::Spectrum;
use agelab::classify::{
    classify_element, classify_small_order, deviation_generation_report, group_verdict, junior_generation,
    DeviationGenerationReport, ElementClassification, GroupVerdict, JuniorGeneration, SmallOrderReport,
};
use agelab::group::FiniteMatrixGroup;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::render::{deviation, num};

#[derive(Serialize)]
pub struct ClassRecord {
    pub label: String,
    pub size: usize,
    pub order: u64,
    pub central: bool,
    pub spectrum: Spectrum,
    pub age: String,
    pub age_star: String,
    pub age_star_shift: String,
    pub delta: Value,
    pub d2_squared: Value,
    pub abs_trace_sq: Option<String>,
    pub classification: ElementClassification,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub source: String,
    pub label: Option<String>,
    pub dim: usize,
    pub order: usize,
    pub projective_order: usize,
    pub precision_bits: u32,
    pub class_count: usize,
    pub classes: Vec<ClassRecord>,
    /// Labels of the non-central classes with `0 < age <= 1`.
    pub junior_classes: Vec<String>,
    pub verdict: GroupVerdict,
    pub junior_generation: JuniorGeneration,
    pub strict_junior_generation: JuniorGeneration,
    pub deviation_generation: Option<DeviationGenerationReport>,
    pub min_geodesic: Value,
}

pub fn analysis(g: &FiniteMatrixGroup, source: &str, budget: Option<f64>) -> AnalysisReport {
    let classes: Vec<ClassRecord> = g
        .classes()
        .iter()
        .map(|c| {
            let s = &c.spectrum;
            let star = s.age_star();
            ClassRecord {
                label: c.label.clone(),
                size: c.size,
                order: c.element_order,
                central: g.is_central(c.representative),
                spectrum: s.clone(),
                age: s.age().to_string(),
                age_star: star.value.to_string(),
                age_star_shift: star.shift.to_string(),
                delta: deviation(&s.delta()),
                d2_squared: deviation(&s.d2_squared()),
                abs_trace_sq: s.trace().abs_sq().as_rational().map(|q| q.to_string()),
                classification: classify_element(s),
            }
        })
        .collect();
    let junior_classes = g
        .classes()
        .iter()
        .zip(&classes)
        .filter(|(c, r)| !r.central && c.spectrum.age() > Zero::zero() && c.spectrum.age() <= One::one())
        .map(|(c, _)| c.label.clone())
        .collect();
    AnalysisReport {
        source: source.to_string(),
        label: g.spec().metadata.label.clone(),
        dim: g.dim(),
        order: g.order(),
        projective_order: g.projective_order(),
        precision_bits: agelab::precision_bits(),
        class_count: classes.len(),
        classes,
        junior_classes,
        verdict: group_verdict(g, budget),
        junior_generation: junior_generation(g, false),
        strict_junior_generation: junior_generation(g, true),
        deviation_generation: budget.and_then(|c| deviation_generation_report(g, c).ok()),
        min_geodesic: g.min_geodesic().map_or(Value::Null, num),
    }
}

pub fn render_text(r: &AnalysisReport, per_class: bool) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("source: {}", r.source));
    if let Some(l) = &r.label {
        line(format!("group: {l}"));
    }
    line(format!(
        "dim {}, order {}, order mod scalars {}, {} classes",
        r.dim, r.order, r.projective_order, r.class_count
    ));
    let v = &r.verdict;
    line(format!(
        "terminal: {}, canonical: {}{}",
        v.terminal,
        v.canonical,
        if v.advisory { " (advisory: contains complex reflections)" } else { "" }
    ));
    line(format!(
        "junior classes: {}",
        if r.junior_classes.is_empty() { "none".into() } else { r.junior_classes.join(", ") }
    ));
    line(format!(
        "junior generated mod scalars: {} (age* < 1 only: {})",
        v.junior_generated_mod_scalars, v.strict_junior_generated_mod_scalars
    ));
    let tri = |b: &Option<agelab::classify::BasicNonRt>| match b {
        Some(x) => serde_json::to_value(x).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        None => "n/a (reducible)".into(),
    };
    line(format!("basic non-RT: {} (projective: {})", tri(&v.basic_non_rt), tri(&v.basic_non_rt_projective)));
    if let Some(d) = &r.deviation_generation {
        line(format!(
            "budget C = {}: {} qualifying elements, generate mod scalars: {}, dim {} <= f(C) = {}: {}",
            d.budget, d.qualifying_elements, d.generates_mod_scalars, d.dim, d.threshold, d.dim_within_threshold
        ));
    }
    line(format!("min geodesic: {}", r.min_geodesic));
    if per_class {
        line("class  size  order  age  age*  Delta  spectrum".into());
        for c in &r.classes {
            line(format!(
                "{}  {}  {}  {}  {}  {}  {}",
                c.label,
                c.size,
                c.order,
                c.age,
                c.age_star,
                c.delta["exact"].as_str().map_or_else(|| c.delta["value"].to_string(), String::from),
                c.spectrum
            ));
        }
    }
    out
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub spectrum: Spectrum,
    pub dim: usize,
    pub order: u64,
    pub projective_order: u64,
    pub age: String,
    pub inverse_age: String,
    pub age_star: String,
    pub age_star_shift: String,
    pub minimizing_shifts: Vec<String>,
    pub delta: Value,
    pub d2_squared: Value,
    pub abs_trace_sq: Option<String>,
    pub d1_lower: Value,
    pub d1_upper: Value,
    pub norm_metric_sq: String,
    pub norm_metric_sq_inf: String,
    pub shortest_arc: String,
    pub classification: ElementClassification,
    pub small_order: Option<SmallOrderReport>,
    pub small_order_note: Option<String>,
}

pub fn spectrum_report(s: &Spectrum) -> SpectrumReport {
    let star = s.age_star();
    let (lo, hi) = s.d1_bounds();
    let (small_order, small_order_note) = match classify_small_order(s) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    SpectrumReport {
        spectrum: s.clone(),
        dim: s.dim(),
        order: s.order(),
        projective_order: s.projective_order(),
        age: s.age().to_string(),
        inverse_age: s.inverse().age().to_string(),
        age_star: star.value.to_string(),
        age_star_shift: star.shift.to_string(),
        minimizing_shifts: s.minimizing_shifts().iter().map(|t| t.to_string()).collect(),
        delta: deviation(&s.delta()),
        d2_squared: deviation(&s.d2_squared()),
        abs_trace_sq: s.trace().abs_sq().as_rational().map(|q| q.to_string()),
        d1_lower: num(lo),
        d1_upper: num(hi),
        norm_metric_sq: s.norm_metric_sq().to_string(),
        norm_metric_sq_inf: s.norm_metric_sq_inf().to_string(),
        shortest_arc: s.shortest_arc().to_string(),
        classification: classify_element(s),
        small_order,
        small_order_note,
    }
}

pub fn render_spectrum_text(r: &SpectrumReport) -> String {
    let c = &r.classification;
    let exact = |v: &Value| v["exact"].as_str().map_or_else(|| v["value"].to_string(), String::from);
    let mut lines = vec![
        format!("spectrum {} (dim {}, order {}, order mod scalars {})", r.spectrum, r.dim, r.order, r.projective_order),
        format!("age {} (inverse {}), age* {} at shift {}", r.age, r.inverse_age, r.age_star, r.age_star_shift),
        format!(
            "Delta {} = {}, d2^2 {} = {}",
            exact(&r.delta),
            r.delta["value"],
            exact(&r.d2_squared),
            r.d2_squared["value"]
        ),
        format!("d1 in [{}, {}]", r.d1_lower, r.d1_upper),
        format!(
            "angle norm^2 {} (infimum over scalars {}), shortest arc {}",
            r.norm_metric_sq, r.norm_metric_sq_inf, r.shortest_arc
        ),
        format!(
            "kind {:?}, junior {}, type {}",
            c.kind,
            c.junior,
            c.spectrum_type.map_or_else(|| "none".to_string(), |t| t.to_string())
        ),
    ];
    match (&r.small_order, &r.small_order_note) {
        (Some(s), _) => lines.push(format!("small order: {} (case {:?}, order {})", s.label, s.case, s.order)),
        (None, Some(n)) => lines.push(format!("small order: not applicable ({n})")),
        _ => {}
    }
    lines.join("\n") + "\n"
}
