use std::process::{Command, Output};

fn johnson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_johnson")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_of_two_two_at_genus_four() {
    let o = johnson(&["dim", "--genus", "4", "[2 2]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "308");
}

#[test]
fn eval_prints_canonical_values() {
    let o = johnson(&["eval", "--genus", "3", "q0(Ht[a1,b1,a1,b1])"]);
    assert_eq!(stdout(&o).trim(), "12");
    let o = johnson(&["eval", "--genus", "3", "q12(Ht[a1,b1,a1,b1])"]);
    assert_eq!(stdout(&o).trim(), "12 a1∧b1");
    let o = johnson(&["eval", "--genus", "3", "wedge(a1,a1)"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn bad_input_exits_with_two() {
    let o = johnson(&["eval", "--genus", "3", "[a1,"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = johnson(&["eval", "--genus", "2", "a3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = johnson(&["verify", "--genus", "3", "--check", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
    let o = johnson(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_exterior_square_at_genus_four() {
    let o = johnson(&["decompose", "--genus", "4", "wedge2-h2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "[431] + [42] + [3²] + [32²1] + 2[321] + [31³] + 2[31] + [2³] + [2²1²] + 2[2²] + 3[21²] + 2[2] + 2[1²]"
    );
    let o = johnson(&["decompose", "--genus", "3", "expr", "Ht[a1,a2,a1,a2]"]);
    assert_eq!(stdout(&o).trim(), "[2²]");
}

#[test]
fn verify_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = johnson(&["verify", "--genus", "2", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("genus 2: pass: 18, fail: 0, skipped: 11"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["genus"], 2);
    assert!(report["engine_version"].is_string());
    assert_eq!(report["summary"]["pass"], 18);
    assert_eq!(report["summary"]["skipped"], 11);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 29);
    for c in checks {
        for key in ["id", "genus", "paper_location", "status", "expected", "computed", "elapsed_ms", "notes"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
    let skipped = checks.iter().find(|c| c["id"] == "bracket-[31^3]").unwrap();
    assert_eq!(skipped["status"], "skipped-genus-too-small");
}

#[test]
fn verify_selected_checks_to_stdout() {
    let o = johnson(&["verify", "--genus", "4", "--check", "bracket-[42]", "--check", "sample-session", "--json", "-"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("genus 4: pass: 2"));
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["bracket-[42]", "sample-session"]);
    assert_eq!(report["checks"][1]["computed"], "p[(1,2)(3,4)] C[1,2] C[1,2] xi1: -576 (a1∧a2)⊗(a1∧a2)");
}

#[test]
fn verify_without_genus_reports_every_genus() {
    let o = johnson(&["verify", "--check", "detector-values", "--json", "-"]);
    assert!(o.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let genera: Vec<u64> = reports.as_array().unwrap().iter().map(|r| r["genus"].as_u64().unwrap()).collect();
    assert_eq!(genera, [2, 3, 4, 5]);
}

#[test]
fn list_shows_every_check() {
    let o = johnson(&["list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 29);
}
