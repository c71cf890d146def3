use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kgamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgamma")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    root.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_three_sb_report() {
    let o = kgamma(&["compute", &config("three_sb_generic.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let per = v["report"]["per_codim"].as_array().unwrap();
    let d2 = per.iter().find(|c| c["d"] == 2).unwrap();
    let torsion: Vec<u64> = d2["torsion"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(!torsion.is_empty() && torsion.iter().all(|&x| x == 3));
    assert_eq!(v["ring"]["dim"], 6);
}

#[test]
fn compute_is_deterministic_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = kgamma(&["compute", &config("three_conics_generic.json"), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let first = std::fs::read_to_string(&out).unwrap();
    let again = kgamma(&["compute", &config("three_conics_generic.json")]);
    assert_eq!(first, stdout(&again));
}

#[test]
fn bad_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"kind":"split","degrees":[2,2],"index_table":{"(0,0)":1,"(1,0)":2}}"#).unwrap();
    let o = kgamma(&["compute", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let missing = kgamma(&["compute", "/nonexistent/config.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn keysb_sweep_all_divisible() {
    let o = kgamma(&["keysb", "--p", "3", "--n", "2", "--sweep"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("4 rows, 0 not divisible"), "{text}");
    let single = kgamma(&["keysb", "--p", "5", "--n", "3", "--m", "1,2,3"]);
    assert!(single.status.success());
    assert!(stdout(&single).contains("m=(1,2,3)"));
    let mismatch = kgamma(&["keysb", "--p", "5", "--n", "2", "--m", "1,2,3"]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn enumerate_streams_limited_rows() {
    let o = kgamma(&["enumerate", "--family", "two-quadrics", "--limit", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let computed: Vec<&Value> = rows.iter().filter(|r| r.get("torsion_2").is_some()).collect();
    assert_eq!(computed.len(), 3);
    assert!(rows.iter().any(|r| r.get("inadmissible").is_some()));
}

#[test]
fn verify_filter_selects_items() {
    let o = kgamma(&["verify", "--filter", "keysb", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() >= 7);
    let none = kgamma(&["verify", "--filter", "no-such-group"]);
    assert_eq!(none.status.code(), Some(2));
}
