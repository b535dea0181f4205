use std::process::{Command, Output};

use hypturan::harness::VerificationReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypturan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_an2_table() {
    let o = run(&["coeffs", "--seq", "an2", "--n", "5", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(
        lines,
        [
            "0 1",
            "1 -3/40",
            "2 -267/11200",
            "3 -32279/2688000",
            "4 -40472969/5519360000"
        ]
    );
}

#[test]
fn coeffs_json_keeps_rationals() {
    let o = run(&[
        "coeffs", "--seq", "ak", "--n", "3", "--a", "1/2", "--exact", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"], serde_json::json!(["1/3", "3/40", "407/11200"]));
    assert_eq!(v["params"]["a"], "1/2");
}

#[test]
fn coeffs_degree_cap() {
    assert_eq!(
        run(&["coeffs", "--seq", "an2", "--n", "100"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["coeffs", "--seq", "an2", "--n", "100", "--allow-large"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn lambda_dips_below_one_at_quarter() {
    let o = run(&["eval", "--fn", "lambda", "--a", "0.25", "--r", "0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: f64 = text.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(v < 1.0 && v > 0.99);
}

#[test]
fn eval_json_output() {
    let o = run(&[
        "eval", "--fn", "lambda", "--a", "0.5", "--r", "0.5", "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let closed = hypturan::functionals::lambda_half_closed(0.5).unwrap();
    assert!((v["value"].as_f64().unwrap() - closed).abs() < 1e-10);
    assert_eq!(v["function"], "lambda");
}

#[test]
fn failing_chain_exits_one() {
    let o = run(&["verify", "--suite", "ineqA1pp", "--grid", "default"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn passing_chain_exits_zero() {
    let o = run(&["verify", "--suite", "ineq2g2", "--grid", "default"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "verify", "--suite", "ineqlam2", "--a", "0.5", "--b1", "0.5", "--b2", "1", "--r", "0.3",
        "--n", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(
        run(&["eval", "--fn", "nope", "--a", "0.5", "--r", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["eval", "--fn", "lambda", "--a", "1.5", "--r", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["eval", "--fn", "lambda", "--a", "0.5", "--r", "0.5", "--eps", "1e-3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "ineqlam2", "--grid", "default", "--b1", "2", "--b2", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "verify", "--suite", "ineqlam2", "--grid", "default", "--a", "0.5", "--b1", "2",
            "--b2", "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn report_json_round_trip() {
    let o = run(&[
        "verify",
        "--suite",
        "ineqlam23",
        "--grid",
        "default",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rep: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.total, rep.passed);
    let again: VerificationReport =
        serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(again, rep);
}

#[test]
fn csv_header_and_rows() {
    let o = run(&[
        "verify",
        "--suite",
        "ineqwv",
        "--grid",
        "r=0.1:0.9:3",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("a,b1,b2,r,n,link1,link2,link3,slackmin,verdict")
    );
    assert_eq!(lines.filter(|l| l.ends_with(",pass")).count(), 3);
}

#[test]
fn counterexample_scan() {
    let o = run(&[
        "scan",
        "--a",
        "0.25",
        "--counterexample",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "both_witnesses");
}

#[test]
fn limits_report_monotone() {
    let o = run(&["limits", "--fn", "f2", "--a", "0.5", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["monotone"], true);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hypturan-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&[
        "verify", "--suite", "ineqh14", "--grid", "default", "--output", "json", "--out", p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rep: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep.total, 19);
    std::fs::remove_file(path).unwrap();
}
