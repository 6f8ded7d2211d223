use std::process::{Command, Output};

use serde_json::Value;

fn carpets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carpets")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = carpets(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn result(v: &Value, key: &str) -> String {
    match &v["result"][key] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn coh_of_the_canonical_class() {
    let v = json(&["coh", "F2", "-2,-4"]);
    assert_eq!((result(&v, "h0"), result(&v, "h1"), result(&v, "h2")), ("0".into(), "0".into(), "1".into()));
    assert_eq!(result(&v, "chi"), "1");
}

#[test]
fn coh_with_oracle_agrees() {
    let v = json(&["coh", "P2", "-3", "--oracle"]);
    assert_eq!(result(&v, "verdict"), "AGREE");
    assert_eq!(result(&v, "oracle_h2"), "1");
    let v = json(&["coh", "F4", "4,12", "--oracle"]);
    assert_eq!(result(&v, "h1"), "3");
    assert_eq!(result(&v, "verdict"), "AGREE");
}

#[test]
fn too_small_a_box_is_reported_verbatim() {
    let out = carpets(&["coh", "F3", "-6,2", "--oracle", "--box", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable under box growth"));
}

#[test]
fn carpet_moduli_dimension() {
    let v = json(&["carpet", "F1", "2,4"]);
    // (a^2 - 1)((2b - ae)^2 - 4)/4 = 3 * 32 / 4
    assert_eq!(result(&v, "embedded_moduli_dim"), "24");
    assert_eq!(result(&v, "abstract_family_dim"), "2");
    assert_eq!(v["provenance"]["axiom_dependent"], Value::Bool(true));
    let v = json(&["carpet", "F1", "2,4", "--N", "20"]);
    assert_eq!(result(&v, "embedded_h0"), "43");
}

#[test]
fn hilbert_verdicts() {
    let v = json(&["hilbert", "F3", "2,8"]);
    assert_eq!(result(&v, "verdict"), "SINGULAR");
    assert_eq!(result(&v, "h1_normal_carpet"), "1");
    let v = json(&["hilbert", "P2", "3"]);
    assert_eq!(result(&v, "verdict"), "SMOOTH");
    // N + 1 = h0(O(3)) + h0(O(0)) = 11
    assert_eq!(v["input"]["N"], Value::String("10".into()));
    assert_eq!(result(&v, "h0_normal_carpet"), "139");
    // h1(-2K) = 5 and h1(-K) = 2 on F5
    let v = json(&["hilbert", "F5", "1,6"]);
    assert_eq!(result(&v, "h1_normal_carpet"), "[5, 7]");
}

#[test]
fn precondition_and_parse_errors_are_usage_errors() {
    let out = carpets(&["carpet", "F2", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not very ample"));
    let out = carpets(&["coh", "F2", "1,z"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
    let out = carpets(&["hilbert", "P2", "3", "--N", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(carpets(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(carpets(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_table() {
    let v = json(&["sweep", "--e", "0..4", "--a", "1..3", "--db", "1..3"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5 * 3 * 3);
    for r in rows {
        let e: u32 = r["surface"].as_str().unwrap()[1..].parse().unwrap();
        assert_eq!(r["exists"], Value::Bool(true));
        assert_eq!(r["smooth"], Value::Bool(e <= 2));
    }
    // lexicographic in (e, a, b)
    assert_eq!(rows[0]["divisor"], "1,1");
    assert_eq!(rows[44]["surface"], "F4");
}

#[test]
fn sweep_records_row_errors_and_continues() {
    let v = json(&["sweep", "--e", "1", "--a", "0..1", "--b", "2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["error"].as_str().unwrap().contains("not very ample"));
    assert_eq!(rows[1]["error"], Value::Null);
}

#[test]
fn empty_sweep_is_an_empty_table() {
    let out = carpets(&["sweep", "--d", "5..2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["sweep", "--d", "5..2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn json_and_csv_carry_the_same_rows() {
    let args = ["sweep", "--d", "1..5", "--dn", "0..2"];
    let v = json(&args);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = carpets(&csv_args);
    let text = String::from_utf8(out.stdout).unwrap();
    let table = text.split("\n\n").nth(1).expect("table block");
    let mut reader = csv::Reader::from_reader(table.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        for (h, cell) in headers.iter().zip(rec.iter()) {
            let expect = match &row[h] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, expect, "column {h}");
        }
    }
}

#[test]
fn output_is_deterministic_unless_stamped() {
    let a = carpets(&["carpet", "F2", "2,5"]);
    let b = carpets(&["carpet", "F2", "2,5"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&["carpet", "F2", "2,5", "--timestamp"]);
    assert!(v["provenance"]["generated_at"].is_string());
    assert!(json(&["carpet", "F2", "2,5"])["provenance"].get("generated_at").is_none());
}

#[test]
fn double_cover_report() {
    let v = json(&["double-cover", "F1"]);
    assert_eq!(v["result"]["is_k3_cover"], Value::Bool(true));
    assert_eq!(result(&v, "h1_N_pi"), "0");
    let v = json(&["double-cover", "F3"]);
    assert_eq!(v["result"]["branch_bpf"], Value::Bool(false));
}

#[test]
fn reduced_verification_passes() {
    let out = carpets(&["verify-paper", "--reduced", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains(",FAIL"));
    assert!(text.contains(",PASS"));
}
