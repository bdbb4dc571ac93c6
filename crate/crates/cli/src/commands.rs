use std::path::Path;

use agelab::angle::Spectrum;
use agelab::catalog::{self, bundled_table1, load_class_spectra, verify_table1, CatalogError, ENTRIES};
use agelab::group::{closure, GroupError, GroupSpec};
use agelab_verify::{run_suite, TrialConfig, VerifyError};
use serde_json::json;

use crate::analyze::{analysis, render_spectrum_text, render_text, spectrum_report};
use crate::render::print_json;
use crate::{AnalyzeArgs, CliError, VerifyArgs};

fn group_error(e: GroupError) -> CliError {
    match e {
        GroupError::ClosureExceedsCap(n) => CliError::Cap(format!("group has more than {n} elements; raise --cap")),
        e => CliError::Input(e.to_string()),
    }
}

fn catalog_error(e: CatalogError) -> CliError {
    match e {
        CatalogError::Group(g) => group_error(g),
        e => CliError::Input(e.to_string()),
    }
}

fn resolve(source: &str, params: &[String]) -> Result<GroupSpec, CliError> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let p = catalog::parse_params(params).map_err(catalog_error)?;
        return catalog::build(name, &p).map_err(catalog_error);
    }
    if !params.is_empty() {
        return Err(CliError::Usage("parameters are only accepted for catalog groups".into()));
    }
    let text = std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?;
    GroupSpec::from_json(&text).map_err(group_error)
}

pub fn analyze(a: &AnalyzeArgs) -> Result<(), CliError> {
    if let Some(c) = a.budget {
        if c.is_nan() || c < 4.0 {
            return Err(CliError::Usage(format!("--budget must be at least 4, got {c}")));
        }
    }
    let spec = resolve(&a.source, &a.params)?;
    let g = closure(&spec, a.cap).map_err(group_error)?;
    let report = analysis(&g, &a.source, a.budget);
    if a.json {
        print_json(serde_json::to_value(&report).expect("serializable"));
    } else {
        print!("{}", render_text(&report, a.per_class));
    }
    Ok(())
}

pub fn verify(v: &VerifyArgs) -> Result<(), CliError> {
    let usage = |e: VerifyError| CliError::Usage(e.to_string());
    let mut config = TrialConfig::for_suite(&v.suite).map_err(usage)?;
    if let Some(s) = v.seed {
        config.seed = s;
    }
    if let Some(t) = v.trials {
        config.trials = t;
    }
    if let Some(t) = v.tolerance {
        config.tolerance = t;
    }
    if let Some(d) = v.max_dim {
        config.max_dim = d;
    }
    config.precision_bits = agelab::precision_bits();
    let r = run_suite(&v.suite, &config).map_err(usage)?;
    if v.json {
        print_json(serde_json::to_value(&r).expect("serializable"));
    } else {
        println!(
            "{}: {} ({} cases, {} checks, {} violations, {} indeterminate, seed {}, {:.0} ms)",
            r.suite,
            if r.passed() { "PASS" } else { "FAIL" },
            r.trials,
            r.checks,
            r.violations,
            r.indeterminate,
            r.config.seed,
            r.elapsed_ms
        );
        for w in &r.witnesses {
            println!("  violation: {w}");
        }
    }
    if r.passed() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

pub fn table1(data: Option<&Path>, json_out: bool) -> Result<(), CliError> {
    let records = match data {
        Some(p) => load_class_spectra(p).map_err(|e| CliError::Input(e.to_string()))?,
        None => bundled_table1(),
    };
    if records.is_empty() {
        eprintln!("warning: the dataset has no rows");
    }
    let report = verify_table1(&records);
    let bad = report.mismatches().count();
    if json_out {
        print_json(json!({ "rows": report.rows, "mismatches": bad, "passed": bad == 0 }));
    } else {
        for r in &report.rows {
            println!(
                "{} {} / {}: spectrum {}, age* {} ({}), Delta {} ({})",
                if r.ok() { "PASS" } else { "FAIL" },
                r.group,
                r.class,
                r.spectrum,
                r.age_star,
                if r.age_star_ok { "ok" } else { "mismatch" },
                r.delta,
                if r.delta_ok { "ok" } else { "mismatch" }
            );
        }
        println!("{} rows, {} mismatches", report.rows.len(), bad);
    }
    if bad == 0 {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

pub fn catalog_list(json_out: bool) -> Result<(), CliError> {
    if json_out {
        let entries: Vec<_> = ENTRIES
            .iter()
            .map(|e| {
                let params: serde_json::Map<_, _> = e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                json!({ "name": e.name, "params": params, "description": e.description })
            })
            .collect();
        print_json(json!({ "entries": entries }));
    } else {
        for e in ENTRIES {
            let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{} {}\n    {}", e.name, params.join(" "), e.description);
        }
    }
    Ok(())
}

pub fn spectrum(args: &[String], json_out: bool) -> Result<(), CliError> {
    let words: Vec<&str> = args.iter().flat_map(|a| a.split([',', ' '])).filter(|w| !w.is_empty()).collect();
    let s = Spectrum::from_strings(&words).map_err(|e| CliError::Input(e.to_string()))?;
    let r = spectrum_report(&s);
    if json_out {
        print_json(serde_json::to_value(&r).expect("serializable"));
    } else {
        print!("{}", render_spectrum_text(&r));
    }
    Ok(())
}
