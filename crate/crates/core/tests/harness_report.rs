use nullray::harness::{check_names, run_suite, Profile, Status, SuiteConfig, SUITES};
use nullray::Error;

fn without_times(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    for r in v["records"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let cfg = SuiteConfig::new(&["specfun", "modes", "eigen"], Profile::Default, 11);
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    assert_eq!(without_times(&a.to_json()), without_times(&b.to_json()));
    assert!(a.all_passed());
}

#[test]
fn records_follow_registry_order() {
    let report = run_suite(&SuiteConfig::new(&["modes", "specfun"], Profile::Fast, 0)).unwrap();
    let mut expected = check_names("specfun");
    expected.extend(check_names("modes"));
    let names: Vec<String> = report.records.iter().map(|r| r.name.clone()).collect();
    assert_eq!(names, expected);
    assert_eq!(report.suites, vec!["specfun", "modes"]);
}

#[test]
fn profiles_scale_tolerances() {
    let strict = run_suite(&SuiteConfig::new(&["eigen"], Profile::Strict, 0)).unwrap();
    let fast = run_suite(&SuiteConfig::new(&["eigen"], Profile::Fast, 0)).unwrap();
    for (s, f) in strict.records.iter().zip(&fast.records) {
        assert_eq!(f.tolerance, 10.0 * s.tolerance);
        assert!(f.n_points <= s.n_points);
    }
    assert_eq!(strict.records[0].n_points, 30);
    assert_eq!(fast.records[0].n_points, 8);
}

#[test]
fn every_suite_has_checks_with_references() {
    for suite in SUITES {
        assert!(!check_names(suite).is_empty(), "{suite}");
    }
    let report = run_suite(&SuiteConfig::new(&["specfun"], Profile::Strict, 0)).unwrap();
    assert!(report.records.iter().all(|r| !r.paper_ref.is_empty() && r.status == Status::Pass));
}

#[test]
fn unknown_suites_are_config_errors() {
    let err = run_suite(&SuiteConfig::new(&["specfun", "bogus"], Profile::Strict, 0)).unwrap_err();
    match err {
        Error::ConfigError(msg) => assert!(msg.contains("bogus") && msg.contains("all")),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn reports_are_written_to_the_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut cfg = SuiteConfig::new(&["specfun"], Profile::Fast, 5);
    cfg.output_path = Some(path.clone());
    let report = run_suite(&cfg).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), report.to_json() + "\n");
}
