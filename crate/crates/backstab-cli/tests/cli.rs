use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn backstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_backstab"))
        .args(args)
        .env_remove("BACKSTAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

#[test]
fn perm_from_code() {
    let out = backstab(&["perm", "--code", "1:[1,2,1,0]"]);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs[0]["schema"], "backstab/1");
    assert_eq!(recs[1]["perm"], "1:[2,4,3,1]");
    assert_eq!(recs[1]["dual_code"], "1:[0,0,1,3]");
}

#[test]
fn bs_record_in_both_formats() {
    let out = backstab(&["bs", "--u", "1:[3,2,1]", "--v", "1:[2,1,3]", "--verify"]);
    let recs = records(&out);
    assert_eq!(recs[1]["bs"], 1);
    assert_eq!(recs[1]["bs_bruteforce"], 1);
    assert_eq!(recs[1]["st"], 1);
    let out = backstab(&[
        "bs",
        "--u",
        "1:[3,2,1]",
        "--v",
        "1:[2,1,3]",
        "--format",
        "table",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("bs=1"), "{text}");
}

#[test]
fn golden_suite_passes_under_both_names() {
    let out = backstab(&["verify-paper"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let recs = records(&out);
    assert_eq!(recs.last().unwrap()["failed"], 0);
    assert!(recs[1..recs.len() - 1].iter().all(|r| r["pass"] == true));
    assert_eq!(backstab(&["golden"]).stdout, out.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(backstab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(backstab(&["bs", "--u", "1:[3,2,1]"]).status.code(), Some(2));
    assert_eq!(backstab(&["perm", "--w", "1:[1,1]"]).status.code(), Some(2));
    let out = backstab(&["rw", "--w", "1:[5,4,3,2,1]", "--max-rw", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-rw"));
    let out = backstab(&[
        "product",
        "--u",
        "1:[3,2,1]",
        "--v",
        "1:[3,2,1]",
        "--back-stable",
        "--max-terms",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-terms"));
}

#[test]
fn config_file_supplies_defaults() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "seed = 11\nu = \"1:[3,2,1]\"\nv = \"1:[2,1,3]\"\nformat = \"ndjson\""
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_backstab"))
        .arg("bs")
        .env("BACKSTAB_CONFIG", file.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs[0]["seed"], 11);
    assert_eq!(recs[1]["bs"], 1);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "sead = 1").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_backstab"))
        .arg("bs")
        .env("BACKSTAB_CONFIG", bad.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_output_is_reproducible() {
    let a = backstab(&["ops", "--op", "nabla", "--leibniz", "50", "--seed", "5"]);
    let b = backstab(&["ops", "--op", "nabla", "--leibniz", "50", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(records(&a).last().unwrap()["failures"], 0);
}

#[test]
fn connectivity_scan_emits_one_record_per_pair() {
    let out = backstab(&["connect", "--scan", "S3", "--kind", "monk", "--back-stable"]);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs.len(), 1 + 36 + 1);
    assert_eq!(recs.last().unwrap()["counterexamples"], 0);
}

#[test]
fn shuffle_and_products() {
    let recs = records(&backstab(&["shuffle", "--p", "[1^1,2^1]", "--q", "[2^1]"]));
    assert_eq!(recs[1]["terms"], 3);
    let recs = records(&backstab(&[
        "product",
        "--u",
        "1:[3,2,1]",
        "--v",
        "1:[2,1,3]",
        "--verify",
    ]));
    assert_eq!(recs[1]["expansion"]["1:[4,2,1,3]"], 1);
    assert_eq!(recs[1]["routes_agree"], true);
    let recs = records(&backstab(&[
        "product",
        "--w",
        "1:[1,3,2]",
        "--window",
        "1:3",
        "--verify",
    ]));
    assert_eq!(recs[1]["agrees_with_divided_differences"], true);
    let recs = records(&backstab(&["keys", "--alpha", "[0,1,2]", "--verify"]));
    assert_eq!(recs[1]["agrees_with_divided_differences"], true);
    assert_eq!(recs[1]["deletion_identity"], true);
}
