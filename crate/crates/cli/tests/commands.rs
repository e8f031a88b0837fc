use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn channel(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../channels")
        .join(name)
}

fn macfb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macfb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = macfb(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ok_csv(args: &[&str]) -> Vec<Vec<String>> {
    let out = macfb(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn path(name: &str) -> String {
    channel(name).to_string_lossy().into_owned()
}

#[test]
fn singlerate_on_erasure_adder() {
    let v = ok_json(&["singlerate", "--channel", &path("erasure_adder_p0.5.json")]);
    assert!((v["user1"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((v["user2"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    let v = ok_json(&["singlerate", "--channel", &path("erasure_adder_p1.json")]);
    assert_eq!(v["user1"].as_f64().unwrap(), 0.0);
    assert_eq!(v["user2"].as_f64().unwrap(), 0.0);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = macfb(&["singlerate", "--channel", "/nonexistent/channel.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].is_string());
}

#[test]
fn malformed_file_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(
        &f,
        r#"{"name":"b","x1":["0"],"x2":["0"],"y":["0","1"],"pmf":[[[1.0,0.5]]]}"#,
    )
    .unwrap();
    let out = macfb(&["singlerate", "--channel", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["path"], "pmf[0][0]");
}

#[test]
fn region_sum_rate_on_noiseless_adder() {
    let rows = ok_csv(&[
        "region",
        "--channel",
        &path("erasure_adder_p0.json"),
        "--weights",
        "1:1",
        "--restarts",
        "5",
        "--verify",
    ]);
    for r in &rows {
        let sum: f64 = r[2].parse::<f64>().unwrap() + r[3].parse::<f64>().unwrap();
        assert!(sum <= 1.584963 + 1e-6, "{r:?}");
    }
    let inner = rows.iter().find(|r| r[4] == "inner_bound").unwrap();
    let sum: f64 = inner[2].parse::<f64>().unwrap() + inner[3].parse::<f64>().unwrap();
    assert!(sum > 1.5);
}

#[test]
fn region_on_erased_channel_is_zero() {
    let rows = ok_csv(&[
        "region",
        "--channel",
        &path("erasure_adder_p1.json"),
        "--restarts",
        "2",
    ]);
    assert_eq!(rows.len(), 34);
    assert!(rows.iter().all(|r| r[2] == "0" && r[3] == "0"));
}

#[test]
fn zero_weight_is_rejected() {
    let out = macfb(&[
        "region",
        "--channel",
        &path("erasure_adder_p0.5.json"),
        "--weights",
        "0:0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let j = dir.path().join(format!("{tag}.json"));
        let c = dir.path().join(format!("{tag}.csv"));
        let out = macfb(&[
            "region",
            "--channel",
            &path("bsc_mac_q0.11.json"),
            "--seed",
            "3",
            "--restarts",
            "4",
            "--json-out",
            j.to_str().unwrap(),
            "--csv-out",
            c.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (std::fs::read(j).unwrap(), std::fs::read(c).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn checkers_dispatch() {
    let v = ok_json(&[
        "check",
        "thm3",
        "--channel",
        &path("erasure_adder_p0.5.json"),
    ]);
    assert_eq!(v["holds"], true);
    let v = ok_json(&["check", "thm4", "--channel", &path("bsc_mac_q0.11.json")]);
    assert_eq!(v["conclusion"], "equal");
    let v = ok_json(&[
        "check",
        "additive",
        "--channel",
        &path("erasure_adder_p0.25.json"),
    ]);
    assert_eq!(v["additive"], true);
    let v = ok_json(&["check", "lemmas", "--channel", &path("bsc_mac_q0.11.json")]);
    assert_eq!(v["lemma1"], true);
    let v = ok_json(&[
        "check",
        "erasure-scaling",
        "--channel",
        &path("bsc_mac_q0.json"),
        "--p",
        "0",
        "--weights",
        "1:1",
        "--restarts",
        "2",
        "--verify",
    ]);
    assert!(v["max_abs_gap"].as_f64().unwrap() < 1e-9);
}

#[test]
fn thm4_without_group_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("nogroup.json");
    std::fs::write(
        &f,
        r#"{"name":"n","x1":["0","1"],"x2":["0"],"y":["0","1"],"pmf":[[[1,0]],[[0,1]]]}"#,
    )
    .unwrap();
    let out = macfb(&["check", "thm4", "--channel", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("group specification required"));
}

#[test]
fn cfcurve_rows() {
    let rows = ok_csv(&["cfcurve", "--channel", &path("erasure_adder_p0.5.json")]);
    let rate = |a: &str| -> f64 {
        rows.iter()
            .find(|r| (r[0].parse::<f64>().unwrap() - a.parse::<f64>().unwrap()).abs() < 1e-12)
            .unwrap()[1]
            .parse()
            .unwrap()
    };
    assert!((rate("0") - 0.5).abs() < 1e-8);
    assert!(rate("0.05") > 0.5);
    assert_eq!(rows.len(), 41);

    let rows = ok_csv(&["cfcurve", "--channel", &path("erasure_adder_p1.json")]);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn cfcurve_sidecar_has_derivative() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("cf.json");
    let out = macfb(&[
        "cfcurve",
        "--channel",
        &path("bsc_mac_q0.11.json"),
        "--a-grid",
        "0,0.1",
        "--json-out",
        j.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&std::fs::read(j).unwrap()).unwrap();
    assert!(v.get("derivative_at_zero").is_some());
}

#[test]
fn example_generator_round_trips() {
    let out = macfb(&["example", "bsc-mac", "--param", "0.11"]);
    assert!(out.status.success());
    assert_eq!(
        out.stdout,
        std::fs::read(channel("bsc_mac_q0.11.json")).unwrap()
    );
}
