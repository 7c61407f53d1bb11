use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seidel-forge"))
        .args(args)
        .env_remove("SEIDEL_FORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn omega_json_matches_schema_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = forge(&["--threads", "1", "omega-table", "--format", "json", "--no-meta", "-o", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = forge(&["--threads", "3", "omega-table", "--format", "json", "--no-meta", "-o", b.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v.get("meta").is_none());
    let omega: Vec<u64> = serde_json::from_value(v["omega"].clone()).unwrap();
    assert_eq!(omega.len(), 29);
    assert_eq!(omega[6], 9);
    assert_eq!(omega[22], 10);
    let raw: Vec<u64> = serde_json::from_value(v["raw_orbit_counts"].clone()).unwrap();
    assert_eq!(raw[6], 10);
}

#[test]
fn check_paper_flags_pass() {
    assert_eq!(code(&forge(&["omega-table", "--check-paper"])), 0);
    let o = forge(&["s-table", "--n-max", "28", "--check-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn s_table_bounds() {
    let o = forge(&["s-table", "--n-max", "0", "--format", "json", "--no-meta"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["s"], serde_json::json!([1]));
    assert_eq!(v["s_e"], serde_json::json!([0]));
    assert_eq!(code(&forge(&["s-table", "--n-max", "29"])), 3);
}

#[test]
fn reps_lines_and_keys() {
    let o = forge(&["reps", "--n", "6"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    let keys: BTreeSet<_> = lines.iter().map(|l| l["key_hex"].as_str().unwrap().to_string()).collect();
    assert_eq!(keys.len(), 9);
    for l in &lines {
        assert_eq!(l["schema_version"], 1);
        assert_eq!(l["n"], 6);
        assert_eq!(l["roots"].as_array().unwrap().len(), 6);
        assert!(l["rank"].as_u64().unwrap() <= 7);
    }

    let o = forge(&["reps", "--n", "28"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn infeasible_size_exits_three_with_hint() {
    let o = forge(&["reps", "--n", "14"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("complement"));
    assert_eq!(code(&forge(&["transversal", "--n", "12"])), 3);
}

#[test]
fn transversal_is_deterministic() {
    let a = forge(&["--threads", "1", "transversal", "--n", "21"]);
    let b = forge(&["--threads", "2", "transversal", "--n", "21"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 16);
}

#[test]
fn classes_and_counts() {
    let o = forge(&["classes", "--no-meta"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 28);
    let o = forge(&["counts", "--no-meta"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let counts: Vec<u64> = serde_json::from_value(v["counts"].clone()).unwrap();
    assert_eq!(counts.len(), 29);
    // Σ ω(n) over the reference table, plus the extra orbit at n = 6
    assert_eq!(counts.iter().sum::<u64>(), 931);
    assert_eq!(counts[6], 10);
}

#[test]
fn verify_selection() {
    let o = forge(&["verify", "--list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 11);
    assert_eq!(code(&forge(&["verify", "--only", "complement-symmetry", "--only", "excess"])), 0);
    assert_eq!(code(&forge(&["verify", "--only", "oracle", "--n-max", "5"])), 0);
    assert_eq!(code(&forge(&["verify", "--only", "no-such-check"])), 2);
    assert_eq!(code(&forge(&["verify", "--only", "oracle", "--n-max", "9"])), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&forge(&["frobnicate"])), 2);
    assert_eq!(code(&forge(&["--threads", "0", "classes"])), 2);
    assert_eq!(code(&forge(&["omega-table", "-o", "/nonexistent/dir/x.json"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_seidel-forge"))
        .arg("classes")
        .env("SEIDEL_FORGE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&forge(&["--help"])), 0);
}
