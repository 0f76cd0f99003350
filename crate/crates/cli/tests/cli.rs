use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cospec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cospec"))
        .args(args)
        .env_remove("COSPEC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = cospec(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn scratch_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cospec-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn charpoly_of_triangle() {
    let v = json(&["charpoly", "Bw"]);
    assert_eq!(v["coefficients"], serde_json::json!(["-2", "-3", "0", "1"]));
    let csv = cospec(&["--format", "csv", "charpoly", "Bw"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout).lines().next(), Some("degree,coefficient"));
}

#[test]
fn grid_classes_and_triangle_has_none() {
    let grid = cospec(&["product", "A_", "Bg"]);
    assert_eq!(code(&grid), 0);
    let g6 = String::from_utf8(grid.stdout).unwrap();
    let v = json(&["classes", g6.trim()]);
    assert_eq!(v["classes"][0]["vertices"], serde_json::json!([0, 2, 3, 5]));
    let v = json(&["find-sets", "Bw"]);
    assert_eq!(v["classes"], serde_json::json!([]));
}

#[test]
fn pairs_both_agree_on_path() {
    let out = cospec(&["pairs", "--both", "Bg"]);
    assert_eq!(code(&out), 0);
    let v = json(&["pairs", "--numeric", "Bg"]);
    let p = &v["pairs"][1];
    assert_eq!(p["vertices"], serde_json::json!([0, 2]));
    assert_eq!(p["numeric"]["strongly_cospectral"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&cospec(&["charpoly", "Z"])), 2);
    assert_eq!(code(&cospec(&["frobnicate"])), 2);
    assert_eq!(code(&cospec(&["pairs", "--exact", "--numeric", "Bg"])), 2);
    assert_eq!(code(&cospec(&["verify-trees", "--max-n", "0"])), 2);
    assert_eq!(code(&cospec(&["fuzz", "--count", "0", "--max-n", "3"])), 2);
}

#[test]
fn verify_trees_is_reproducible_across_thread_counts() {
    let a = cospec(&["--format", "json", "verify-trees", "--max-n", "9"]);
    let b = cospec(&["--format", "json", "verify-trees", "--max-n", "9", "--jobs", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["success"], true);
    assert_eq!(v["totals"]["trees"], 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47);
    assert_eq!(v["totals"]["strongly_cospectral_triples"], Value::Null);
}

#[test]
fn timing_only_on_request() {
    let v = json(&["verify-trees", "--max-n", "4"]);
    assert!(v.get("wall_time_seconds").is_none());
    let v = json(&["--timing", "verify-trees", "--max-n", "4"]);
    assert!(v["wall_time_seconds"].is_number());
}

#[test]
fn audit_reports_branches() {
    let v = json(&["audit-triples", "--max-n", "8"]);
    assert_eq!(v["success"], true);
    assert_eq!(v["totals"]["separated_triples"], v["totals"]["confirmed"]);
    assert!(v["branch_counts"]["zero"].as_u64().unwrap() > 0);
}

#[test]
fn fuzz_is_deterministic_and_journalled() {
    let args = ["--format", "json", "fuzz", "--count", "60", "--max-n", "7", "--seed", "11"];
    let plain = cospec(&args);
    assert_eq!(code(&plain), 0);
    assert_eq!(plain.stdout, cospec(&args).stdout);

    let dir = scratch_dir("fuzz");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cospec"))
            .args(args)
            .env("COSPEC_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.stdout, plain.stdout);
    let journal = std::fs::read_to_string(dir.join("fuzz.jsonl")).unwrap();
    assert_eq!(journal.lines().count(), 2);
    assert!(dir.join("fuzz.json").exists());
    // The rerun is served from the journal and appends nothing.
    let second = run();
    assert_eq!(second.stdout, plain.stdout);
    assert_eq!(std::fs::read_to_string(dir.join("fuzz.jsonl")).unwrap(), journal);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn spectrum_dump_uses_decimal_strings() {
    let v = json(&["spectrum", "A_"]);
    let e = &v["decomposition"]["eigenvalues"];
    assert_eq!(e[0]["value"], "1");
    let entry: f64 = v["decomposition"]["projectors"][1][0][1]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((entry + 0.5).abs() < 1e-15);
    assert_eq!(v["invariants"]["within_tolerance"], true);
}
