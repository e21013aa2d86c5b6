use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splinewave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{got:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
    }
}

#[test]
fn qpoly_prints_exact_rationals() {
    let out = run(&["qpoly", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("4 - 9/2 x + 3/2 x^2"));
    assert!(text.contains("-9/2"));
    let out = run(&["qpoly", "--n", "4", "--oracle"]);
    assert!(stdout(&out).contains("EEA oracle: MATCH"));
}

#[test]
fn factor_n2_and_haar() {
    let s3 = 3f64.sqrt();
    let v = json(&["factor", "--n", "2"]);
    assert_close(
        &floats(&v["a"]),
        &[(1.0 + s3) / 2.0, (1.0 - s3) / 2.0],
        1e-15,
    );
    let v = json(&["factor", "--n", "1"]);
    assert_eq!(floats(&v["a"]), vec![1.0]);
}

#[test]
fn factor_all_lists_eight_for_n4() {
    let v = json(&["factor", "--n", "4", "--all"]);
    assert_eq!(v["count"], 8);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 8);
    let reference = [2.6064, -2.3381, 0.8516, -0.1199];
    assert!(sols.iter().any(|s| floats(&s["a"])
        .iter()
        .zip(&reference)
        .all(|(g, w)| (g - w).abs() < 5e-5)));
}

#[test]
fn coeffs_match_reference_values() {
    let v = json(&["coeffs", "--n", "1"]);
    assert_eq!(floats(&v["p"]), vec![1.0, 1.0]);
    let v = json(&["coeffs", "--n", "3"]);
    assert_close(
        &floats(&v["p"]),
        &[0.0498, -0.121, -0.191, 0.650, 1.141, 0.4705],
        1e-3,
    );
    let v = json(&["coeffs", "--n", "4"]);
    assert_close(
        &floats(&v["p"]),
        &[
            0.3258, 1.011, 0.8922, -0.0396, -0.2646, 0.0436, 0.0466, -0.015,
        ],
        1e-3,
    );
}

#[test]
fn coeffs_csv() {
    let out = run(&["coeffs", "--n", "2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,p"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn seventeen_significant_digits() {
    let v = run(&["factor", "--n", "2"]);
    let text = stdout(&v);
    assert!(text.contains("1.3660254037844386"), "{text}");
}

#[test]
fn cascade_defaults_are_ten_and_twentyfive() {
    let a = run(&["cascade", "--n", "3"]);
    let b = run(&["cascade", "--n", "3", "--levels", "10", "--iters", "25"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("x,phi"));
    // support [1, 6] at step 2^-10
    assert_eq!(text.lines().count(), 1 + 5 * 1024 + 1);
}

#[test]
fn cascade_haar_box_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.csv");
    let out = run(&[
        "cascade",
        "--n",
        "1",
        "--levels",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        let (x, y) = line.split_once(',').unwrap();
        let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
        assert_eq!(y, if (1.0..2.0).contains(&x) { 1.0 } else { 0.0 }, "{line}");
    }
}

#[test]
fn cascade_unwritable_output_is_io_error() {
    let out = run(&["cascade", "--n", "2", "--out", "/nonexistent/dir/phi.csv"]);
    assert_eq!(code(&out), 74);
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/phi.csv"));
}

#[test]
fn verify_passes_and_perturbation_fails() {
    for n in ["1", "2", "3", "4", "8", "16"] {
        let out = run(&["verify", "--n", n]);
        assert_eq!(code(&out), 0, "n = {n}");
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["checks"].as_object().unwrap().len(), 8);
    }
    let out = run(&["verify", "--n", "3", "--perturb", "3:0.001"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["filter_pair_accepted"], false);
}

#[test]
fn verify_warns_beyond_reliable_order() {
    let out = run(&["verify", "--n", "17"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn roundtrip_reconstructs() {
    let v = json(&[
        "roundtrip",
        "--n",
        "3",
        "--length",
        "1024",
        "--levels",
        "3",
        "--seed",
        "7",
    ]);
    assert!(v["max_err_relative"].as_f64().unwrap() <= 1e-8);
    assert!(v["parseval_deviation"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn roundtrip_rejects_bad_length() {
    let out = run(&["roundtrip", "--n", "3", "--length", "1020", "--levels", "3"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["factor", "--n", "0"][..],
        &["factor", "--n", "65"],
        &["factor", "--n", "3", "--branch", "sideways"],
        &["factor", "--n", "3", "--branch", "index:99"],
        &["cascade", "--n", "3", "--levels", "0"],
        &["verify", "--n", "3", "--perturb", "three"],
        &["bogus"],
    ] {
        assert_eq!(code(&run(args)), 64, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["factor", "--n", "6", "--all"][..],
        &["verify", "--n", "5"],
        &[
            "roundtrip",
            "--n",
            "4",
            "--length",
            "256",
            "--levels",
            "2",
            "--seed",
            "11",
        ],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
