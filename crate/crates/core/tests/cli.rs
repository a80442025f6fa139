use std::path::PathBuf;

use etf::cli::run_with;
use etf::frames::{read_json, verify_etf, DEFAULT_TOL};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("etf").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(table: u8) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../fixtures/table{table}.csv"))
        .display()
        .to_string()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("paley7.json");
    let path = path.to_str().unwrap();
    let (code, _, err) = run(&["construct", "--family", "paley", "--q", "7", "--out", path]);
    assert_eq!(code, 0, "{err}");
    let frame = read_json(path).unwrap();
    assert_eq!((frame.m(), frame.n()), (3, 7));
    assert!(verify_etf(&frame, DEFAULT_TOL).is_etf());

    let (code, out, _) = run(&["verify", path]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(report["coherence"].as_f64().unwrap() > 0.0);
}

#[test]
fn construct_writes_to_stdout_without_out() {
    let (code, out, _) = run(&["construct", "--family", "simplex", "--m", "3"]);
    assert_eq!(code, 0);
    let frame = etf::frames::from_json_str(&out).unwrap();
    assert_eq!((frame.m(), frame.n()), (3, 4));
}

#[test]
fn registry_labels_construct() {
    let (code, out, err) = run(&["construct", "--family", "registry", "--label", "Steiner BIBD(7,3,1)"]);
    assert_eq!(code, 0, "{err}");
    let frame = etf::frames::from_json_str(&out).unwrap();
    assert_eq!((frame.m(), frame.n()), (7, 28));

    let (code, _, err) = run(&["construct", "--family", "registry", "--label", "Nothing(1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("no registry family"));
}

#[test]
fn verify_rejects_a_non_etf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = r#"{"m":2,"n":3,"field":"real","columns":[[[1,0],[0,0]],[[0,0],[1,0]],[[1,0],[0,0]]]}"#;
    std::fs::write(&path, text).unwrap();
    let (code, out, err) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["coherence"].as_f64().unwrap(), 1.0);

    std::fs::write(&path, r#"{"m":2,"n":3,"field":"real","columns":[]}"#).unwrap();
    let (code, _, err) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("declared n = 3"));
}

#[test]
fn missing_file_is_an_io_failure() {
    let (code, _, err) = run(&["verify", "/nonexistent/frame.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn check_reports_both_verdicts() {
    let (code, out, _) = run(&["check", "19", "76"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["real_verdict"]["verdict"], "dne");
    assert_eq!(v["complex_verdict"]["verdict"], "plausible");

    let (code, _, _) = run(&["check", "9", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn tables_match_their_fixtures() {
    for (which, table) in [("real", 1u8), ("complex", 2), ("conference", 3)] {
        let (code, out, _) = run(&["table", which]);
        assert_eq!(code, 0);
        assert_eq!(out, std::fs::read_to_string(fixture(table)).unwrap(), "{which}");

        let n = table.to_string();
        let (code, out, _) = run(&["diff", "--table", &n, "--fixture", &fixture(table)]);
        assert_eq!(code, 0);
        assert!(out.contains("no differences"));
    }
}

#[test]
fn diff_against_the_wrong_table_fails() {
    let (code, _, err) = run(&["diff", "--table", "1", "--fixture", &fixture(3)]);
    assert_eq!(code, 1);
    assert!(err.contains("unexpected header"));
}

#[test]
fn other_table_formats() {
    let (code, md, _) = run(&["table", "conference", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(md.starts_with('|'));
    let (code, tex, _) = run(&["table", "real", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(tex.contains("longtable"));
    let (code, json, _) = run(&["table", "complex", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<serde_json::Value>(&json).unwrap().is_array());
}

#[test]
fn registry_dump_is_json() {
    let (code, out, _) = run(&["registry", "--catalog", "conference", "--max-m", "20", "--max-n", "40"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let list = v.as_array().unwrap();
    assert!(!list.is_empty());
    assert!(list.iter().all(|fd| fd["n"] == fd["m"].as_u64().unwrap() * 2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["construct", "--family", "paley"]).0, 2);
    assert_eq!(run(&["construct", "--family", "paley", "--q", "5"]).0, 2);
    assert_eq!(run(&["diff", "--table", "4", "--fixture", "x.csv"]).0, 2);
    assert_eq!(run(&["verify", "x.json", "--tol", "-1"]).0, 2);
}

#[test]
fn help_and_version_flags() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("construct"));
    let (_, _, err) = run(&["--verbose", "check", "5", "6"]);
    assert!(err.starts_with("etf "));
}
