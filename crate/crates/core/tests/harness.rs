use hypturan::functionals::{ChainKind, FnArgs, Functional};
use hypturan::harness::{
    counterexample_certificate, default_grid, scan_sign, verify_grid, write_csv, Axis,
    FindingStatus, GridSpec, ParamSet, VerificationReport,
};

const EPS: f64 = 1e-12;

#[test]
fn grid_runs_are_deterministic() {
    let spec = default_grid(ChainKind::Ineqlam23);
    let mut a = verify_grid(&spec, EPS).unwrap();
    let mut b = verify_grid(&spec, EPS).unwrap();
    a.runtime_ms = 0;
    b.runtime_ms = 0;
    assert_eq!(a, b);
    assert_eq!(a.total, a.results.len());
}

#[test]
fn report_json_round_trip() {
    let spec = GridSpec::new(
        ChainKind::Ineqf2,
        vec![
            Axis::linear("a", 0.2, 0.8, 3),
            Axis::linear("r", 0.1, 0.9, 3),
        ],
    )
    .with_n([0, 2]);
    let rep = verify_grid(&spec, EPS).unwrap();
    let json = serde_json::to_string(&rep).unwrap();
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rep);
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
}

#[test]
fn csv_header_is_stable() {
    let spec = GridSpec::new(ChainKind::Ineqwv, vec![Axis::linear("r", 0.2, 0.8, 4)]);
    let rep = verify_grid(&spec, EPS).unwrap();
    let mut buf = Vec::new();
    write_csv(&rep, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("a,b1,b2,r,n,link1,"));
    assert!(header.ends_with(",slackmin,verdict"));
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn failing_points_are_reported() {
    let spec = GridSpec::new(ChainKind::Ineqa1pp, vec![Axis::linear("r", 0.4, 0.6, 2)])
        .with_param_sets(vec![ParamSet {
            a: 0.5,
            b1: None,
            b2: None,
        }])
        .with_n([0]);
    let rep = verify_grid(&spec, EPS).unwrap();
    assert_eq!(rep.passed, 0);
    assert_eq!(rep.failures.len(), 2);
    for f in &rep.failures {
        assert_eq!(f.report.as_ref().unwrap().first_failure(), Some(2));
    }
}

#[test]
fn general_grid_needs_parameters() {
    let spec = GridSpec::new(ChainKind::Ineqlam2, vec![Axis::linear("r", 0.1, 0.9, 3)]);
    assert!(spec.validate().is_err());
    let spec = spec
        .with_param_sets(vec![ParamSet {
            a: 0.5,
            b1: Some(0.5),
            b2: Some(1.0),
        }])
        .with_n([1]);
    assert!(verify_grid(&spec, EPS).unwrap().all_passed());
    let bad = GridSpec::new(ChainKind::Ineqlam2, vec![Axis::linear("r", 0.1, 0.9, 3)])
        .with_param_sets(vec![ParamSet {
            a: 0.5,
            b1: Some(1.0),
            b2: Some(0.5),
        }]);
    assert!(verify_grid(&bad, EPS).is_err());
}

#[test]
fn quarter_counterexample() {
    let f = counterexample_certificate(0.25, EPS).unwrap();
    assert_eq!(f.status, FindingStatus::BothWitnesses);
    assert!(f.small_r.unwrap().excess < 0.0);
    assert!(f.large_r.unwrap().excess > 0.0);
}

#[test]
fn half_has_no_small_r_counterexample() {
    let f = counterexample_certificate(0.5, EPS).unwrap();
    assert_eq!(f.status, FindingStatus::NoSmallRCounterexample);
}

#[test]
fn scan_certificates_revalidate() {
    let rep = scan_sign(
        Functional::LambdaMinusOne,
        &FnArgs::symmetric(0.25),
        0.01,
        0.99,
        40,
        EPS,
    )
    .unwrap();
    assert!(!rep.certificates.is_empty());
    for c in &rep.certificates {
        assert!(c.is_well_formed());
        assert!(c.revalidate().unwrap());
        assert!(c.r_hi - c.r_lo <= 1e-6);
    }
}
