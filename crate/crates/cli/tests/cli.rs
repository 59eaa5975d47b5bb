//! End-to-end tests of the binary: exit codes, determinism, and the JSON
//! mirror of the text reports.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn report_prints_the_fundamental_matrix() {
    let out = run(&["report", "--exponents", "2,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fundamental matrix M:"));
    assert!(text.contains("tangent generators:"));
    assert!(text.contains("curvature R(d12, d13):"));
    assert!(text.contains("charpoly3:"));
    assert!(text.contains("module trace"));
}

#[test]
fn report_without_charpoly_in_two_variables() {
    // one tangent generator in two variables: no distinct curvature pairs
    // and no charpoly3 section
    let out = run(&["report", "--exponents", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("d12 = (x2)*d1 + (-x1)*d2"));
    assert!(!text.contains("charpoly3"));

    // four variables: curvature pairs appear, charpoly3 still only for rank 3
    let out = run(&["report", "--exponents", "2,2,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("curvature R(d12, d13):"));
    assert!(!text.contains("charpoly3"));
}

#[test]
fn bad_exponents_exit_two() {
    let out = run(&["report", "--exponents", "2,0,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["report", "--exponents", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["report", "--exponents", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // missing required flag: argument parsing also exits 2
    let out = run(&["report"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_corruption_fails() {
    let out = run(&[
        "verify",
        "--exponents",
        "2,2,2",
        "--suite",
        "curvature",
        "--seed",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS]"));

    let out = run(&["verify", "--exponents", "2,3,2", "--suite", "curvature"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "verify",
        "--exponents",
        "2,2,2",
        "--suite",
        "projectivity",
        "--corrupt",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));

    let out = run(&["verify", "--exponents", "2,2,2", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--exponents", "2,2,2", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_output_is_deterministic_for_a_seed() {
    let args = [
        "verify",
        "--exponents",
        "2,2,2",
        "--suite",
        "endotensor",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "stdout must be byte-identical");

    let args = ["report", "--exponents", "2,3,2", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn jets_probe_reports_the_obstruction() {
    let out = run(&["jets", "--exponents", "2,2,2", "--l", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("flat: false"));
    assert!(text.contains("K^{1,1}"));

    let out = run(&["jets", "--free", "3", "--l", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("flat: true"));

    let out = run(&["jets", "--l", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2), "needs a module");
}

#[test]
fn degree_cap_exits_three() {
    let out = run(&["jets", "--exponents", "2,2,45", "--l", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degree cap 40"), "{err}");
}

#[test]
fn mcm_passes_and_validates_ranges() {
    let out = run(&["mcm", "--m", "2", "--n", "2", "--k", "1", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("phi * psi = f * I"));

    let out = run(&["mcm", "--m", "2", "--n", "2", "--k", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_mirrors_the_text_report() {
    let text_out = run(&["verify", "--exponents", "2,2,2", "--suite", "mcm"]);
    let json_out = run(&["verify", "--exponents", "2,2,2", "--suite", "mcm", "--json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).expect("valid json");
    let reports = parsed.as_array().expect("array of suite reports");
    assert_eq!(reports.len(), 1);
    let checks = reports[0]["checks"].as_array().unwrap();
    let text = stdout(&text_out);
    for check in checks {
        let name = check["name"].as_str().unwrap();
        assert!(text.contains(name), "text report carries '{name}'");
        assert!(check["pass"].as_bool().unwrap());
    }

    let json_report = run(&["report", "--exponents", "2,2,2", "--json"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&json_report)).expect("valid json");
    assert_eq!(parsed["fundamental_matrix"]["rows"], 3);
    assert_eq!(parsed["fundamental_matrix"]["cols"], 3);
    assert!(parsed["fundamental_matrix"]["entries"][0][1]
        .as_str()
        .unwrap()
        .contains("x1*x2"));
}
