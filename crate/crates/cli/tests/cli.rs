use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellpigeon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).expect("valid json")
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn scan_full_range() {
    let csv = stdout(&["scan", "--state", "bell11", "--from", "0", "--to", "180", "--step", "1"]);
    assert_eq!(csv.lines().next(), Some("theta_deg,total,zz_component,xx_component"));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 181);
    let at120 = rows.iter().find(|r| r[0] == 120.0).expect("row at 120");
    assert_eq!(at120[1], 1.5);
    for r in &rows {
        assert!((r[1] - (r[2] + r[3])).abs() < 1e-10);
    }
}

#[test]
fn scan_single_points() {
    let r = rows(&stdout(&[
        "scan", "--state", "bell11", "--from", "90", "--to", "90", "--step", "1",
    ]));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][1], 1.0);
    let r = rows(&stdout(&[
        "scan", "--state", "bell00", "--from", "0", "--to", "0", "--step", "1",
    ]));
    assert_eq!(r[0][1], 3.0);
}

#[test]
fn scan_json_format() {
    let v = json(&["scan", "--from", "120", "--to", "120", "--format", "json"]);
    assert_eq!(v["schema"], "bellpigeon/1");
    assert_eq!(v["rows"][0]["total"], 1.5);
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let checks: Vec<_> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert!(checks.len() >= 25);
    for line in checks {
        assert!(line.starts_with("PASS"), "{line}");
        let residual: f64 = line
            .split("residual=")
            .nth(1)
            .unwrap()
            .split(' ')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        assert!(residual <= 1e-10, "{line}");
    }
}

#[test]
fn pigeonhole_probabilities_vanish() {
    for (n, pairs) in [(2, 1), (3, 3), (5, 10)] {
        let v = json(&["pigeonhole", "--n", &n.to_string()]);
        assert_eq!(v["schema"], "bellpigeon/1");
        let list = v["pairs"].as_array().unwrap();
        assert_eq!(list.len(), pairs);
        for p in list {
            assert_eq!(p["probability"].as_f64(), Some(0.0));
            assert!(p["i"].as_u64() < p["j"].as_u64());
        }
    }
}

#[test]
fn sample_violates_on_bell00() {
    let v = json(&[
        "sample", "--state", "bell00", "--theta", "120", "--n", "100000", "--seed", "7",
    ]);
    assert_eq!(v["violated"], true);
    assert_eq!(v["bound"].as_f64(), Some(-1.0));
    let sum = v["sum"].as_f64().unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    let stderr = pairs
        .iter()
        .map(|p| p["stderr"].as_f64().unwrap().powi(2))
        .sum::<f64>()
        .sqrt();
    assert!((sum + 1.5).abs() <= 4.0 * stderr, "sum {sum}, stderr {stderr}");
    assert_eq!(v["seed"].as_u64(), Some(7));
    assert_eq!(v["n"].as_u64(), Some(100_000));
}

#[test]
fn sample_on_bell11_uses_upper_bound() {
    let v = json(&["sample", "--state", "bell11", "--n", "20000", "--seed", "3"]);
    assert_eq!(v["bound"].as_f64(), Some(1.0));
    assert_eq!(v["violated"], true);
}

#[test]
fn witness_values() {
    let v = json(&["witness", "--p", "0.5"]);
    assert_eq!(v["expectation"].as_f64(), Some(-0.125));
    assert_eq!(v["entangled_flag"], true);
    assert_eq!(v["ppt_verdict"]["ppt"], false);
    let v = json(&["witness", "--p", "0.2"]);
    assert_eq!(v["expectation"].as_f64(), Some(0.1));
    assert_eq!(v["entangled_flag"], false);
    assert_eq!(v["ppt_verdict"]["ppt"], true);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["sample", "--state", "bell00", "--n", "5000", "--seed", "11"][..],
        &["scan", "--state", "bell11", "--step", "0.5"][..],
        &["verify"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("bellpigeon-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert!(stdout(&["scan", "--from", "0", "--to", "10", "--output", p]).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["scan", "--from", "0", "--to", "10"]));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["pigeonhole", "--n", "1"]), Some(2));
    assert_eq!(code(&["pigeonhole", "--n", "11"]), Some(2));
    assert_eq!(code(&["scan", "--state", "ghz"]), Some(2));
    assert_eq!(code(&["scan", "--step", "0"]), Some(2));
    assert_eq!(code(&["scan", "--to", "360"]), Some(2));
    assert_eq!(code(&["sample", "--n", "0"]), Some(2));
    assert_eq!(code(&["witness", "--p", "1.5"]), Some(2));
    assert_eq!(code(&["witness", "--p", "0.5", "--format", "csv"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["scan", "--output", "/nonexistent-dir/x.csv"]), Some(1));
}
