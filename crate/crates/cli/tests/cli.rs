use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitforge"))
        .args(args)
        .env_remove("UNITFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid json report");
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unitforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn assert_counts(v: &Value) {
    let c = &v["counts"];
    assert_eq!(
        c["passed"].as_u64().unwrap() + c["failed"].as_u64().unwrap(),
        c["checked"].as_u64().unwrap()
    );
    assert_eq!(
        v["failures"].as_array().unwrap().len() as u64,
        c["failed"].as_u64().unwrap()
    );
}

#[test]
fn group_info_reports_rank() {
    let (code, v) = json(&["group", "info", "S3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["rank_center"], 0);
    assert_eq!(v["is_cut"], true);
    assert_eq!(v["order"], 6);
    let (_, v) = json(&["group", "info", "D14"]);
    assert_eq!(v["rank_center"], 2);
    assert_eq!(v["is_cut"], false);
}

#[test]
fn group_info_reads_a_table_file() {
    let path = scratch(
        "c3.json",
        r#"{"name": "C3", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "generators": {"x": 1}}"#,
    );
    let (code, v) = json(&["group", "info", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["abelian_quotient"], "C3");
    assert_eq!(v["rank_center"], 0);
}

#[test]
fn missing_file_is_a_usage_error() {
    assert_eq!(run(&["abelianize", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["group", "info", "NoSuchGroup"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "eq", "--rule", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn abelianize_file_and_entry() {
    let path = scratch(
        "pres.json",
        r#"{"generators": ["x", "y"], "relators": [[["x", 4]], [["y", 6]], [["x", 2], ["y", 3]]]}"#,
    );
    let (code, v) = json(&["abelianize", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // entries have gcd 1 and the 2x2 minors 24, 12, -12 have gcd 12
    assert_eq!(v["invariant_factors"], serde_json::json!([12]));
    assert_eq!(v["free_rank"], 0);
    let (_, v) = json(&["abelianize", "V(ZS3)"]);
    assert_eq!(v["abelianization"], "C2^2");
}

#[test]
fn catalog_verify_flags_only_the_d16_plus_entry() {
    let (code, v) = json(&["catalog", "verify"]);
    assert_counts(&v);
    assert_eq!(v["counts"]["checked"], 5);
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["id"], "V(ZD16+)");
    assert_eq!(code, 1);
}

#[test]
fn verify_sweeps_exit_zero() {
    for args in [
        &["verify", "prop31", "--group", "S3"][..],
        &["verify", "eq", "--rule", "3", "--group", "D8"],
        &["verify", "lemma33", "--group", "Q8"],
        &["verify", "lemma34", "--group", "D10"],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_counts(&v);
        assert!(v["counts"]["checked"].as_u64().unwrap() > 0);
    }
    let (_, v) = json(&["verify", "prop31", "--group", "S3"]);
    assert_eq!(v["counts"]["checked"], 36);
}

#[test]
fn units_commands() {
    let (code, v) = json(&["units", "bicyclic", "--group", "S3", "--g", "a", "--h", "b"]);
    assert_eq!(code, 0);
    assert_eq!(v["unit"], "1 + a - a^2 + a*b - a^2*b");
    let (code, v) = json(&["units", "bass", "--group", "C5", "--g", "a", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], 4);
    assert_eq!(v["unit"], "-2 + a + 3*a^2 + a^3 - 2*a^4");
    assert_eq!(
        run(&["units", "bass", "--group", "C5", "--g", "a", "--k", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn kappa_default_and_custom_weights() {
    let (code, v) = json(&["kappa", "D16+"]);
    assert_eq!(code, 0);
    assert_eq!(v["nontrivial"], true);
    assert_eq!(v["homomorphism"], true);
    assert_eq!(run(&["kappa", "S3"]).status.code(), Some(2));
    let path = scratch("zero.json", r#"{"a": 0, "b": 0}"#);
    let out = run(&["kappa", "D16+", "--weights", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn invariants_checks_pass() {
    let (code, v) = json(&["invariants", "D16+"]);
    assert_eq!(code, 0);
    assert_counts(&v);
    assert_eq!(v["rank"]["rank_center"], 0);
}

#[test]
fn dihedral_reports_are_reproducible() {
    let args = [
        "dihedral2p",
        "--p",
        "5",
        "--trials",
        "20",
        "verify",
        "--seed",
        "11",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["witness"]["passed"], 20);
    assert_eq!(v["residue_group"]["order"], 10);
    assert_counts(&v);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unitforge"))
        .args(["dihedral2p", "--p", "3", "--trials", "5", "verify", "--json"])
        .env("UNITFORGE_SEED", "77")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 77);
    assert_eq!(run(&["dihedral2p", "--p", "9", "verify"]).status.code(), Some(2));
}
