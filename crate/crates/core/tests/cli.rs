use std::path::PathBuf;
use std::process::{Command, Output};

fn permwilf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permwilf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("permwilf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_s2() -> PathBuf {
    let out = permwilf(&["enumerate", "--basis", "", "--max-size", "2"]);
    assert!(out.status.success());
    let path = scratch("s2.json");
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn enumerate_counts() {
    let out = permwilf(&["enumerate", "--basis", "213,231,312", "--max-size", "6", "--format", "count"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 3 4 5 6");
}

#[test]
fn wilf_sequence_of_the_wedge_class() {
    let out = permwilf(&["wilf", "--basis", "213,312", "--horizon", "8"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["horizon"], 8);
    assert_eq!(v["terms"], serde_json::json!([1, 1, 1, 1, 1, 1, 1, 1]));
    assert_eq!(v["uniquely_wilf"], true);
}

#[test]
fn extend_from_a_class_file() {
    let s2 = write_s2();
    let out = permwilf(&[
        "extend",
        "--class-file",
        s2.to_str().unwrap(),
        "--require-monotone",
        "--format",
        "count",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "16");

    let out = permwilf(&["extend", "--class-file", s2.to_str().unwrap(), "--require-monotone", "--apply", "0"]);
    let s3 = permwilf::class::FiniteClass::from_json(&stdout(&out)).unwrap();
    assert_eq!(s3, permwilf::class::FiniteClass::all_permutations(3));
}

#[test]
fn json_is_deterministic() {
    let args = ["search", "--basis", "213,231,312", "--horizon", "3", "--max-size", "6"];
    let a = permwilf(&args);
    let b = permwilf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "unique-full");
    assert_eq!(v["max_size"], 6);
    assert_eq!(v["branch_cap"], 100000);
}

#[test]
fn search_resume_round_trip() {
    let capped = permwilf(&[
        "search", "--basis", "213,231,312", "--horizon", "3", "--max-size", "7", "--branch-cap", "2",
    ]);
    assert!(capped.status.success());
    let v: serde_json::Value = serde_json::from_slice(&capped.stdout).unwrap();
    assert_eq!(v["status"], "budget-exhausted");
    let path = scratch("capped.json");
    std::fs::write(&path, &capped.stdout).unwrap();

    let resumed = permwilf(&["search", "--resume", path.to_str().unwrap(), "--max-size", "7", "--format", "table"]);
    assert!(resumed.status.success());
    assert!(stdout(&resumed).starts_with("status\tunique-full"));
}

#[test]
fn other_subcommands() {
    let out = permwilf(&["basis", "--basis", "2413,3142", "--max-size", "6", "--format", "table"]);
    assert_eq!(stdout(&out), "2413\n3142");

    let out = permwilf(&["balance", "--basis", "", "--k", "3", "--n", "4", "--format", "count"]);
    assert_eq!(stdout(&out), "10");

    let out = permwilf(&["wilf", "--basis", "", "--horizon", "6", "--k", "4", "--format", "count"]);
    assert_eq!(stdout(&out), "2");

    let out = permwilf(&["grid", "--peg", "2- 3- 1.", "--contains", "2431", "--format", "table"]);
    assert_eq!(stdout(&out), "true");
    let out = permwilf(&["grid", "--peg", "1+ 2-", "--enumerate", "3", "--format", "table"]);
    assert_eq!(stdout(&out), "123\n132\n321");
    let out = permwilf(&["grid", "--peg", "1+ 2+", "--format", "table"]);
    assert_eq!(stdout(&out), "false");

    let out = permwilf(&["wedge", "--encode", "132", "--format", "table"]);
    assert_eq!(stdout(&out), "LR");
    let out = permwilf(&["wedge", "--decode", "RR", "--format", "table"]);
    assert_eq!(stdout(&out), "321");
    let out = permwilf(&[
        "wedge", "--bijection", "--alpha", "L", "--beta", "R", "--word", "RRL", "--format", "table",
    ]);
    assert_eq!(stdout(&out), "LLR");

    let out = permwilf(&["orbit", "--perms", "132", "--format", "count"]);
    assert_eq!(stdout(&out), "4");
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(permwilf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(permwilf(&["enumerate", "--basis", "12x", "--max-size", "3"]).status.code(), Some(2));
    assert_eq!(
        permwilf(&["extend", "--basis", "", "--horizon", "2", "--constraint-form", "bogus"]).status.code(),
        Some(2)
    );

    // Domain errors carry the offending value on stderr.
    let out = permwilf(&["extend", "--basis", "132", "--horizon", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("uniquely-Wilf"));
    let out = permwilf(&["wedge", "--encode", "213"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("213"));

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"max_size": 2, "levels": {"1": ["1"], "2": ["12", "12"]}}"#).unwrap();
    assert_eq!(permwilf(&["wilf", "--class-file", bad.to_str().unwrap()]).status.code(), Some(1));
    let bad = scratch("open.json");
    std::fs::write(&bad, r#"{"max_size": 2, "levels": {"2": ["12"]}}"#).unwrap();
    assert_eq!(permwilf(&["wilf", "--class-file", bad.to_str().unwrap()]).status.code(), Some(1));
}
