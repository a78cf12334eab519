use std::process::{Command, Output};

use modforge::modulardata::eholzer_datum;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modular-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn eholzer_rep_passes_relations() {
    let o = run(&["rep", "--p", "7", "--a", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rep"]["dim"], 4);
    assert_eq!(v["relations"]["t_order"], 7);
    assert_eq!(v["floats"]["S"].as_array().unwrap().len(), 4);
}

#[test]
fn direct_sum_has_combined_level() {
    let o = run(&["rep", "--p", "3", "--a", "1", "--direct-sum-with-q", "7", "--a2", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rep"]["dim"], 6);
    assert_eq!(v["rep"]["level"], 21);
}

#[test]
fn non_prime_is_usage_error() {
    let o = run(&["rep", "--p", "9"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn rho_prime_branches() {
    assert_eq!(code(&run(&["rep", "--p", "5", "--rho-prime"])), 0);
    assert_eq!(code(&run(&["rep", "--p", "5", "--rho-prime", "--branch", "minus-root-neg-xi"])), 0);
    assert_eq!(code(&run(&["rep", "--p", "5", "--rho-prime", "--branch", "plus-root-xi"])), 1);
}

#[test]
fn case_two_candidate_document() {
    let o = run(&["modular", "--p", "3", "--q", "7", "--case", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["gate"]["accepted"], true);
    assert_eq!(v["datum"]["rank"], 6);
    assert_eq!(v["verlinde"]["outcome"], "ring");
    assert_eq!(v["axioms"]["modular_relation"], true);
    assert_eq!(v["cauchy"]["t_order"], 21);
    assert!(v["datum"]["floats"]["S"].is_array());
}

#[test]
fn case_one_candidate_passes() {
    assert_eq!(code(&run(&["modular", "--p", "7", "--q", "11"])), 0);
}

#[test]
fn gate_rejection_exits_nonzero() {
    let o = run(&["modular", "--p", "3", "--q", "11"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["gate"]["accepted"], false);
    assert_eq!(v["gate"]["norm"], "4");
}

#[test]
fn bad_case_is_usage_error() {
    assert_eq!(code(&run(&["modular", "--p", "3", "--q", "7", "--case", "3"])), 2);
}

#[test]
fn modular_csv_is_fusion_table() {
    let o = run(&["modular", "--p", "3", "--q", "7", "--case", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("X,Y,Z,N"));
    assert!(lines.any(|l| l == "X,Z1,Z1,2"));
}

#[test]
fn gate_scan_lists_accepted_pairs() {
    let o = run(&["gate-scan", "--max", "50"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let accepted: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["accepted"] == true)
        .map(|g| (g["p"].as_u64().unwrap(), g["q"].as_u64().unwrap()))
        .collect();
    assert_eq!(accepted, [(3, 7), (7, 11), (13, 17), (19, 23), (37, 41), (43, 47)]);
}

#[test]
fn gate_scan_small_bounds() {
    let o = run(&["gate-scan", "--max", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
    let o = run(&["gate-scan", "--max", "10", "--format", "pretty"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("(3, 7)"));
}

#[test]
fn extension_ring_report() {
    let o = run(&["ring", "extension", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ring"]["rank"], 8);
    assert_eq!(v["commutative"], false);
    assert_eq!(v["axioms"]["failure_count"], 0);
    assert_eq!(v["z2_grading"]["even"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn near_group_and_ty_rings() {
    let o = run(&["ring", "near-group", "--n", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ring"]["rank"], 6);
    assert_eq!(v["subrings"].as_array().unwrap().len(), 3);

    let o = run(&["ring", "ty", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["commutative"], true);
    assert_eq!(code(&run(&["ring", "ty"])), 2);
}

#[test]
fn from_verlinde_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case2.json");
    let p = path.to_str().unwrap();
    let o = run(&["modular", "--p", "3", "--q", "7", "--case", "2", "--out", p]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());

    let o = run(&["ring", "from-verlinde", "--input", p]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ring"]["rank"], 6);
    assert_eq!(v["subrings"], serde_json::json!([[0], [0, 1, 2, 3, 4, 5]]));

    // a bare datum works too
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bare = dir.path().join("bare.json");
    std::fs::write(&bare, doc["datum"].to_string()).unwrap();
    assert_eq!(code(&run(&["ring", "from-verlinde", "--input", bare.to_str().unwrap()])), 0);
}

#[test]
fn from_verlinde_reports_non_integrality() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let datum = serde_json::to_string(&eholzer_datum(5, 1).unwrap().to_json(None)).unwrap();
    std::fs::write(&path, datum).unwrap();
    let o = run(&["ring", "from-verlinde", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn missing_input_is_usage_error() {
    assert_eq!(code(&run(&["ring", "from-verlinde"])), 2);
    assert_eq!(code(&run(&["ring", "from-verlinde", "--input", "/nonexistent.json"])), 2);
}
