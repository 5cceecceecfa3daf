use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use srrlab::report::AnalysisReport;

fn srrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srrlab"))
        .args(args)
        .env_remove("SRRLAB_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = srrlab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn family(dir: &Path, name: &str, param: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}-{param}.gm"));
    let mut args = vec![
        "family",
        "--name",
        name,
        "--param",
        param,
        "--out",
        path.to_str().unwrap(),
    ];
    args.extend(extra);
    ok(&args);
    path
}

#[test]
fn family_outputs() {
    let hamming = ok(&["family", "--name", "hamming", "--param", "4"]);
    let mut lines = hamming.lines();
    assert_eq!(lines.next(), Some("15 11"));
    assert_eq!(lines.count(), 11);

    let simplex = ok(&[
        "family",
        "--name",
        "simplex",
        "--param",
        "4",
        "--form",
        "evaluation",
    ]);
    assert_eq!(
        simplex,
        "15 4\n000000011111111\n000111100001111\n011001100110011\n101010101010101\n"
    );
    assert_eq!(
        ok(&["family", "--name", "repetition", "--param", "5"]),
        "5 1\n11111\n"
    );

    let a = ok(&["family", "--name", "random", "--param", "9,4", "--seed", "7"]);
    let b = ok(&["family", "--name", "random", "--param", "9,4", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let h = family(dir.path(), "hamming", "4", &[]);
    let json = ok(&["analyze", h.to_str().unwrap(), "--format", "json"]);
    let report = AnalysisReport::from_json(&json).unwrap();
    assert_eq!(report.rows.len(), 11);
    assert!(report
        .rows
        .iter()
        .all(|r| r.lambda_max.as_ref().map(|x| x.to_string()) == Some("3".into())));
    assert_eq!(report.to_json().unwrap(), json);
    // Same bytes whatever the worker count.
    assert_eq!(
        ok(&["analyze", h.to_str().unwrap(), "--format", "json", "--jobs", "1"]),
        json
    );

    let s = family(dir.path(), "simplex", "4", &[]);
    let csv = ok(&["analyze", s.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(csv.lines().count(), 5);
    for row in csv.lines().skip(1) {
        assert_eq!(row.split(',').nth(8), Some("8"));
    }

    let p = family(dir.path(), "spc", "6", &[]);
    let table = ok(&["analyze", p.to_str().unwrap(), "--object", "3"]);
    assert!(table.contains("lambda_max"));
    let no_lp = ok(&[
        "analyze",
        p.to_str().unwrap(),
        "--exact-lp=false",
        "--format",
        "json",
    ]);
    let report = AnalysisReport::from_json(&no_lp).unwrap();
    assert!(!report.exact_lp && report.rows.iter().all(|r| r.lambda_max.is_none()));
    let with_lp =
        AnalysisReport::from_json(&ok(&["analyze", p.to_str().unwrap(), "--format", "json"])).unwrap();
    assert!(with_lp
        .rows
        .iter()
        .all(|r| r.lambda_max.as_ref().map(|x| x.to_string()) == Some("2".into())));
}

#[test]
fn feasibility_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let h = family(dir.path(), "hamming", "4", &[]);
    let h = h.to_str().unwrap();
    let out = ok(&["feasible", h, "3,0,0,0,0,0,0,0,0,0,0"]);
    assert!(out.starts_with("feasible\n"));
    assert!(ok(&["feasible", h, "0,0,0,0,0,0,0,0,0,0,0"]).starts_with("feasible"));
    let out = ok(&["feasible", h, "31/10,0,0,0,0,0,0,0,0,0,0"]);
    assert!(out.starts_with("infeasible\n") && out.contains("certificate verified"));
}

#[test]
fn mld_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let s = family(dir.path(), "simplex", "4", &["--form", "evaluation"]);
    let s = s.to_str().unwrap();
    let votes = "1;12,13;2,3;4,11,14;7,9,15";
    assert!(ok(&["mld", s, "--object", "4", "--t", "2", "--votes", votes]).contains("PASS"));
    assert!(ok(&["mld", s, "--object", "4", "--t", "2"]).contains("PASS"));
    let fail = ok(&["mld", s, "--object", "4", "--t", "4"]);
    assert!(fail.contains("FAIL: error pattern {"), "{fail}");
    let sampled = ok(&[
        "mld",
        s,
        "--object",
        "4",
        "--t",
        "3",
        "--mode",
        "sampled",
        "--samples",
        "200",
    ]);
    assert!(sampled.contains("PASS"));
    let bad = srrlab(&[
        "mld",
        s,
        "--object",
        "4",
        "--t",
        "2",
        "--votes",
        "1;12,13;2,3;4,14;7,15",
    ]);
    assert_eq!(bad.status.code(), Some(1));

    let r = family(dir.path(), "repetition", "3", &[]);
    assert!(ok(&["mld", r.to_str().unwrap(), "--object", "1", "--t", "1"]).contains("PASS"));
}

#[test]
fn design_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let s = family(dir.path(), "simplex", "4", &["--form", "evaluation"]);
    let h = family(dir.path(), "hamming", "4", &[]);
    let s = s.to_str().unwrap();
    let h = h.to_str().unwrap();
    assert!(ok(&["design", s, "--weight", "min", "--t", "2"]).starts_with("2-(15,8,4) design: YES\n"));
    assert!(ok(&["design", h, "--t", "2"]).starts_with("2-(15,3,1) design: YES (Steiner)\n"));
    assert!(ok(&["design", s, "--t", "2", "--puncture", "1"]).starts_with("1-(14,7,4) design: YES\n"));
    assert!(
        ok(&["design", h, "--t", "2", "--puncture", "1", "--dual"]).starts_with("1-(14,7,4) design: YES\n")
    );
    assert!(ok(&["design", h, "--weight", "4", "--t", "1"]).starts_with("1-(15,4,28) design: YES"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let h = family(dir.path(), "hamming", "4", &[]);
    let h = h.to_str().unwrap();
    assert_eq!(srrlab(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        srrlab(&["analyze", "/nonexistent/file.gm"]).status.code(),
        Some(1)
    );
    assert_eq!(srrlab(&["analyze", h, "--object", "12"]).status.code(), Some(1));
    assert_eq!(
        srrlab(&["family", "--name", "hamming", "--param", "x"])
            .status
            .code(),
        Some(1)
    );

    let bad = dir.path().join("bad.gm");
    std::fs::write(&bad, "3 2\n101\n01x\n").unwrap();
    let out = srrlab(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(srrlab(&["feasible", h, "1,2,x"]).status.code(), Some(2));
    assert_eq!(
        srrlab(&["feasible", h, "1/0,0,0,0,0,0,0,0,0,0,0"]).status.code(),
        Some(2)
    );

    assert_eq!(srrlab(&["analyze", h, "--cap-dual", "10"]).status.code(), Some(3));
    assert_eq!(
        srrlab(&["design", h, "--t", "2", "--cap-dual", "100"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn environment_caps_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let h = family(dir.path(), "hamming", "4", &[]);
    let h = h.to_str().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_srrlab"))
            .args(args)
            .env("SRRLAB_CAPS", "span=10")
            .output()
            .unwrap()
    };
    assert_eq!(run(&["analyze", h]).status.code(), Some(3));
    assert!(run(&["analyze", h, "--cap-dual", "100000"]).status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_srrlab"))
        .args(["analyze", h])
        .env("SRRLAB_CAPS", "nonsense")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
