//! Golden tests for the command-line tool.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_clawperf"))
        .args(args)
        .env_remove("CLAWPERF_CATALOG")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn check(args: &[&str], file: &str, code: i32) {
    let (c, out, err) = run(args);
    assert_eq!(c, code, "{args:?}: {err}");
    assert_eq!(out, golden(file), "{args:?}");
    if file.ends_with(".json") {
        let v: serde_json::Value = serde_json::from_str(&out).expect("stdout is JSON");
        let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v, "{args:?} round-trips");
    }
}

#[test]
fn classify_pair() {
    check(&["classify-pair", "@2K1uK3", "--alpha", "4"], "classify_pair_2K1uK3.json", 0);
    check(&["classify-pair", "@P7"], "classify_pair_P7.json", 0);
    check(&["classify-pair", "@K_1_3"], "classify_pair_claw.json", 0);
    check(&["classify-pair", "@P4", "--alpha", "3"], "classify_pair_P4_alpha3.json", 0);
}

#[test]
fn verdicts() {
    check(&["verdict", "@E5", "@2K1uK3"], "verdict_E5_2K1uK3.json", 1);
    check(&["verdict", "@P4", "@P6"], "verdict_P4_P6.json", 1);
    check(&["verdict", "IxCGGC@oG", "@B_1_2"], "verdict_C9x2_B_1_2.json", 1);
    let (c, out, _) = run(&["verdict", "@P6", "@2K1uK3"]);
    assert_eq!(c, 1);
    assert!(out.contains("\"in_class\":false"));
}

#[test]
fn holes() {
    check(&["find-hole", "@C6"], "find_hole_C6.json", 0);
    check(&["find-hole", "@C7"], "find_hole_C7.json", 1);
}

#[test]
fn inflations() {
    check(&["recognize-inflation", "@E1"], "recognize_inflation_E1.json", 1);
    check(&["recognize-inflation", "ExFG"], "recognize_inflation_C5x2.json", 0);
    check(&["generate", "--family", "F1", "--param", "9"], "generate_F1_9.g6", 0);
    let (c, out, _) = run(&["generate", "--family", "F2", "--param", "11", "--dot"]);
    assert_eq!(c, 0);
    assert!(out.starts_with("graph"));
}

#[test]
fn sweeps_and_catalog() {
    check(&["derive-exceptions", "--n-max", "9"], "derive_exceptions_9.json", 0);
    check(&["verify", "h6-orbits"], "h6_orbits.json", 0);
    check(&["catalog", "show", "H6"], "catalog_show_H6.json", 0);
    let (c, out, _) = run(&["catalog", "list"]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().len() >= 30);
    let (c, out, _) = run(&["verify", "unavoidability", "--n-max", "6"]);
    assert_eq!(c, 0, "{out}");
}

#[test]
fn enumerate_report() {
    let dir = std::env::temp_dir().join(format!("clawperf-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let (c, out, _) = run(&[
        "enumerate",
        "--forbid",
        "@K_1_3",
        "--n-max",
        "6",
        "--connected",
        "--workers",
        "2",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["graphs"], file["graphs"]);
    // Connected claw-free graphs: 1, 1, 2, 5, 14, 50.
    let counts: Vec<u64> = v["per_order"].as_array().unwrap().iter().map(|o| o["emitted"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 14, 50]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_go_to_stderr() {
    for args in [
        &["verdict", "@Nope", "@P4"][..],
        &["find-hole", "%%%"],
        &["bogus"],
        &["derive-exceptions", "--n-max", "13"],
    ] {
        let (c, out, err) = run(args);
        assert_eq!(c, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn catalog_override() {
    let dir = std::env::temp_dir().join(format!("clawperf-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cat.txt");
    std::fs::write(&path, "X\tDhc\thole=5\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_clawperf"))
        .args(["find-hole", "@X"])
        .env("CLAWPERF_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_clawperf"))
        .args(["find-hole", "@X"])
        .env("CLAWPERF_CATALOG", dir.join("missing.txt"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
