use cpmackey::verify::{run_suite, Suite, SuiteParams};
use cpmackey::GroundRing;

fn run(suite: Suite, params: SuiteParams) {
    let rep = run_suite(suite, &params).unwrap();
    for c in rep.failures() {
        eprintln!("{suite}: {} | {}", c.name, c.detail);
    }
    assert!(rep.pass, "{suite} {:?}", rep.inputs);
}

#[test]
fn every_suite_passes_with_defaults() {
    for s in Suite::ALL {
        run(s, SuiteParams::default());
    }
}

#[test]
fn suites_at_other_parameters() {
    let f7 = GroundRing::PrimeField(7);
    run(Suite::MackeyTable, SuiteParams { p: Some(2), ring: Some(f7), ..Default::default() });
    run(Suite::PointRing, SuiteParams { p: Some(5), ..Default::default() });
    run(Suite::PointRing, SuiteParams { p: Some(3), ring: Some(f7), ..Default::default() });
    run(Suite::Freeness, SuiteParams { p: Some(2), ..Default::default() });
    run(Suite::Cpv, SuiteParams { p: Some(2), q: Some(7), max_dim: Some(3), ..Default::default() });
    run(Suite::Ext, SuiteParams { ring: Some(GroundRing::PrimeField(5)), ..Default::default() });
}

#[test]
fn suite_errors() {
    assert!("nope".parse::<Suite>().is_err());
    assert_eq!("point-ring".parse::<Suite>().unwrap(), Suite::PointRing);
    let bad = SuiteParams { p: Some(3), q: Some(3), ..Default::default() };
    assert!(run_suite(Suite::Bo2, &bad).is_err());
    assert!(
        run_suite(Suite::Ext, &SuiteParams { ring: Some(GroundRing::PrimeField(2)), ..Default::default() }).is_err()
    );
    assert!(run_suite(Suite::Freeness, &SuiteParams { p: Some(4), ..Default::default() }).is_err());
}
