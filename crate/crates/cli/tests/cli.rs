use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const RUNNING: &str = r#"{"type":"ee","l":[[1,1],[8],[4]],"d":[[-1,-2],[7],[3]]}"#;
const D8: &str = r#"{"rays":[[1,0,0],[0,1,0],[1,1,2],[-3,-2,-2]],"max_cones":[[0,1],[1,2],[1,3],[0,2,3]]}"#;

fn kstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstar")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn analyze_reports_three_equal_indices() {
    let dir = TempDir::new().unwrap();
    let out = kstar(&["analyze", &write(&dir, "running.json", RUNNING)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    for route in ["formula", "via_hat", "direct"] {
        assert_eq!(r["picard_index"][route], 60);
    }
    assert_eq!(r["class_group"]["torsion"], serde_json::json!([4]));
    assert_eq!(r["minor_sets"]["gcd_m_phat"], 4);
    assert_eq!(r["fixed_points"].as_array().unwrap().len(), 3);
}

#[test]
fn toric_reports_the_failing_formula() {
    let dir = TempDir::new().unwrap();
    let out = kstar(&["toric", &write(&dir, "d8.json", D8)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["picard"]["pic_index"], 2);
    assert_eq!(r["via_hat_index"], 2);
    assert_eq!(r["local_order_quotient"], serde_json::json!([1, 1]));
    assert_eq!(r["quotient_is_index"], false);
    assert!(r["note"].as_str().unwrap().contains("Picard index is 2"));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let invalid = write(&dir, "bad.json", r#"{"type":"ee","l":[[1,1],[8],[4]],"d":[[-2,-1],[7],[3]]}"#);
    assert_eq!(kstar(&["analyze", &invalid]).status.code(), Some(2));
    assert_eq!(kstar(&["analyze", &write(&dir, "junk.json", "{")]).status.code(), Some(2));
    assert_eq!(kstar(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(kstar(&["analyze", "--format", "csv", &write(&dir, "r.json", RUNNING)]).status.code(), Some(2));
    assert_eq!(kstar(&["classify-toric", "--max-index", "0"]).status.code(), Some(2));
    assert_eq!(kstar(&["classify-nontoric", "--max-index", "5", "--cases", "eXeY"]).status.code(), Some(2));
}

#[test]
fn classify_toric_to_ten_has_fourteen_rows() {
    let out = kstar(&["classify-toric", "--max-index", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "picard_index,case,n_or_lambda,weights_or_ltuple,d_data,local_orders,canonical_key");
    assert_eq!(lines.count(), 14);
    let out = kstar(&["classify-toric", "--max-index", "10", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!((first["picard_index"].as_u64(), first["case"].as_str()), (Some(1), Some("toric")));
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for (threads, path) in [("1", &a), ("3", &b)] {
        let out = kstar(&["--threads", threads, "classify-nontoric", "--max-index", "120", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(read(&a), read(&b));
}

#[test]
fn resumed_census_matches_a_single_run() {
    let dir = TempDir::new().unwrap();
    let whole = dir.path().join("whole.csv");
    let parts = dir.path().join("parts.csv");
    let ckpt = dir.path().join("run.ckpt");
    let ckpt = ckpt.to_str().unwrap();
    assert!(kstar(&["census", "--max-index", "600", "--out", whole.to_str().unwrap()]).status.success());
    assert!(kstar(&["census", "--max-index", "300", "--out", parts.to_str().unwrap(), "--resume", ckpt]).status.success());
    let cp: Value = serde_json::from_str(&fs::read_to_string(ckpt).unwrap()).unwrap();
    assert_eq!(cp["completed"], 300);
    assert!(kstar(&["census", "--max-index", "600", "--out", parts.to_str().unwrap(), "--resume", ckpt]).status.success());
    assert_eq!(read(&whole), read(&parts));
    // A checkpoint only continues the command that wrote it.
    let other = kstar(&["classify-toric", "--max-index", "700", "--out", parts.to_str().unwrap(), "--resume", ckpt]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn cases_filter_keeps_only_requested_cases() {
    let out = kstar(&["classify-nontoric", "--max-index", "40", "--cases", "eDp,eEp"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let cases: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|c| *c == "eDp" || *c == "eEp"));
}

#[test]
fn verify_passes_for_any_seed() {
    for seed in ["0", "12345"] {
        let out = kstar(&["verify", "--count", "60", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let r = json(&out);
        assert_eq!(r["failures"], serde_json::json!([]));
        assert_eq!(r["checks"]["picard_index_routes"]["passed"], 60);
    }
}
