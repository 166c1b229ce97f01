use twocst::suites;

fn assert_ok(r: &suites::SuiteReport) {
    if let Some(c) = r.checks.iter().find(|c| !c.ok) {
        panic!("{}: {} ({})", r.suite, c.name, c.detail);
    }
    assert!(r.passed > 0);
}

#[test]
fn counterexamples_suite_passes() {
    assert_ok(&suites::counterexamples().unwrap());
}

#[test]
fn oracle_suite_passes() {
    let r = suites::oracle(7, 60, 11).unwrap();
    assert_ok(&r);
    assert_eq!(r.checks[0].detail, "60/60 agree");
}

#[test]
fn threshold_suite_passes() {
    assert_ok(&suites::thresholds(9, 150, 5).unwrap());
}

#[test]
fn pattern_and_geometric_suites_pass() {
    assert_ok(&suites::pattern_claims(3).unwrap());
    assert_ok(&suites::geometric(25).unwrap());
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(suites::oracle(0, 1, 1).is_err());
    assert!(suites::pattern_claims(1).is_err());
    assert!(suites::thresholds(1, 1, 1).is_err());
}
