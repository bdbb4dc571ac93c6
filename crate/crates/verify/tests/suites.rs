use agelab_verify::{run_suite, TrialConfig, VerifyError, SUITES};

fn run(name: &str, tweak: impl FnOnce(&mut TrialConfig)) -> agelab_verify::SuiteReport {
    let mut config = TrialConfig::for_suite(name).unwrap();
    tweak(&mut config);
    let r = run_suite(name, &config).unwrap();
    println!(
        "{name}: trials {} checks {} violations {} indeterminate {} ({:.0} ms)",
        r.trials, r.checks, r.violations, r.indeterminate, r.elapsed_ms
    );
    for w in r.witnesses.iter().take(5) {
        println!("  {w}");
    }
    r
}

#[test]
fn every_suite_runs_clean_at_its_defaults() {
    for name in SUITES {
        let r = run(name, |_| {});
        assert_eq!(r.violations, r.witnesses.len());
        assert!(r.passed(), "{name} has {} violations", r.violations);
        assert!(r.checks > 0, "{name} made no checks");
        assert!(r.indeterminate * 100 <= r.trials, "{name}: {} indeterminate", r.indeterminate);
    }
}

#[test]
fn unknown_suites_and_bad_configs_are_rejected() {
    let config = TrialConfig::for_suite("chen_ruan").unwrap();
    assert_eq!(run_suite("no_such_suite", &config), Err(VerifyError::UnknownSuite("no_such_suite".into())));
    assert!(TrialConfig::for_suite("no_such_suite").is_err());
    let zero = TrialConfig { trials: 0, ..config.clone() };
    assert!(matches!(run_suite("chen_ruan", &zero), Err(VerifyError::InvalidConfig(_))));
    let neg = TrialConfig { tolerance: -1.0, ..config };
    assert!(matches!(run_suite("chen_ruan", &neg), Err(VerifyError::InvalidConfig(_))));
}

#[test]
fn reports_do_not_depend_on_the_worker_count() {
    for name in ["chen_ruan", "interlacing", "deviation", "age_axioms", "tensor"] {
        let mut config = TrialConfig::for_suite(name).unwrap();
        config.trials = 200;
        config.seed = 7;
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| run_suite(name, &config)).unwrap().without_timing();
        let b = four.install(|| run_suite(name, &config)).unwrap().without_timing();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{name}");
    }
}

#[test]
fn different_seeds_draw_different_trials() {
    let mut config = TrialConfig::for_suite("arc").unwrap();
    config.trials = 50;
    let a = run_suite("arc", &config).unwrap();
    config.seed += 1;
    let b = run_suite("arc", &config).unwrap();
    assert!(a.passed() && b.passed());
    // Arc checks one law per subset of distinct angles, so counts track the draws.
    assert_ne!(a.checks, b.checks);
}
