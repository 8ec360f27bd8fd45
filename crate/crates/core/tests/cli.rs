use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hybrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybrid")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn canonical_rotation() {
    let out = hybrid(&["words", "canon", "--word", "2,1,1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["canonical"], "1,1,2");
}

#[test]
fn commensurable_reports_shift() {
    let out = hybrid(&["words", "commensurable", "--alpha", "1,2,2,1", "--beta", "1,1,2,2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["commensurable"], true);
    assert_eq!(v["shift"], 3);

    let out = hybrid(&["words", "commensurable", "--alpha", "1,1,2,2", "--beta", "1,2,1,2"]);
    assert_eq!(json(&out)["commensurable"], false);
}

#[test]
fn length_mismatch_is_a_usage_error() {
    let out = hybrid(&["words", "commensurable", "--alpha", "1,2", "--beta", "1,2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("different lengths"));
}

#[test]
fn stabilizer_and_enumeration() {
    let out = hybrid(&["words", "stabilizer", "--word", "2,1,1,1", "--piece-bound", "5"]);
    let v = json(&out);
    assert_eq!(v["dihedral_order"], 2);
    assert_eq!(v["isometry_upper_bound"], 10);

    let out = hybrid(&["words", "enumerate", "--r", "2", "--m", "3"]);
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["classes"][0], serde_json::json!([1, 1, 1, 2, 2, 2]));
}

#[test]
fn family_rejects_small_n() {
    assert_eq!(hybrid(&["forms", "family", "--n", "1", "--count", "3"]).status.code(), Some(2));
    let out = hybrid(&["forms", "family", "--n", "4", "--count", "3"]);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[1]["a"], serde_json::json!({"u": "23", "v": "0"}));
    assert_eq!(v[0]["admissible"], true);
    let csv = hybrid(&["forms", "family", "--n", "3", "--count", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 3);
}

#[test]
fn certify_then_verify_round_trip() {
    let out = hybrid(&["forms", "certify", "--n", "4", "--a", "23", "--a-prime", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["certificate"]["place"]["p"], 7);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&out.stdout).unwrap();
    let path = file.path().to_str().unwrap();
    let checked = hybrid(&["forms", "verify", "--cert", path]);
    assert_eq!(checked.status.code(), Some(0));
    assert_eq!(json(&checked)["valid"], true);

    // a certificate whose recorded place was altered must be rejected
    let mut tampered = v["certificate"].clone();
    tampered["place"]["sqrt2_root"] = Value::from(3);
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(tampered.to_string().as_bytes()).unwrap();
    let rejected = hybrid(&["forms", "verify", "--cert", bad.path().to_str().unwrap()]);
    assert_ne!(rejected.status.code(), Some(0));
}

#[test]
fn certify_without_witness_exits_one() {
    let out = hybrid(&["forms", "certify", "--n", "4", "--a", "7", "--a-prime", "7", "--max-prime", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "no-witness");
}

#[test]
fn census_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let vols = dir.path().join("vols.json");
    std::fs::write(&vols, r#"{"1": "3/2", "2": "5/2"}"#).unwrap();
    let args = [
        "census", "--r", "2", "--m-max", "40", "--volumes", vols.to_str().unwrap(), "--K", "4", "--V", "10",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_hybrid")).args(args).env("HYBRID_CENSUS_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_hybrid")).args(args).env("HYBRID_CENSUS_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let v = json(&one);
    assert_eq!(v["rows"].as_array().unwrap().len(), 40);
    assert_eq!(v["rows"][5]["a_m"], "80");
    assert_eq!(v["power_threshold"], 6);
    assert!(v["liminf_quotient"].as_f64().unwrap() > 0.0);
    assert!(String::from_utf8_lossy(&one.stderr).contains("sqrt(r)"));

    let csv = hybrid(&["census", "--r", "3", "--m-max", "4", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("m,a_m,pow2,multinomial_bound,asymptotic,ratio\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn census_rejects_half_constants() {
    assert_eq!(hybrid(&["census", "--r", "2", "--m-max", "3", "--K", "1"]).status.code(), Some(2));
}
