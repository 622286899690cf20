use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unisingular")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn payload(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn conjecture_table_is_verified() {
    let out = run(&["specht", "conjecture-table", "--n", "5,7,9,11,13"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["version", "command", "seed", "anchors", "result", "wall_time_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let dets: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["det_one_minus"].as_str().unwrap()).collect();
    assert_eq!(dets, ["6", "20", "56", "144", "352"]);
    let closed: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["closed_form"].as_str().unwrap()).collect();
    assert_eq!(closed, dets);
}

#[test]
fn embed_audit_exit_codes() {
    let out = run(&["embed", "audit", "--group", "agl2_3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["audit"]["unisingular"], true);
    assert_eq!(v["result"]["audit"]["absolutely_irreducible"], true);

    let out = run(&["embed", "audit", "--group", "pgl2", "--q", "19"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["audit"]["offenders"], serde_json::json!(["19A"]));
    assert_eq!(v["result"]["offenders_are_order_19"], true);
    assert_eq!(v["result"]["offender_charpoly_is_cyclotomic"], true);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["specht", "audit", "--n", "7", "--family", "n-2,2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert!(out.stdout.is_empty());

    let out = run(&["specht", "audit", "--n", "40", "--family", "n-2,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["embed", "audit", "--group", "m24"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn payload_is_deterministic_across_jobs() {
    let args = ["embed", "census", "--group", "agl2_3"];
    let a = run(&args);
    let b = run(&["--jobs", "2", "embed", "census", "--group", "agl2_3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(payload(&a), payload(&b));

    let args = ["--seed", "7", "nt", "frobenius-scan", "--pmax", "2000"];
    assert_eq!(payload(&run(&args)), payload(&run(&args)));
}

#[test]
fn csv_output() {
    let out = run(&["--format", "csv", "specht", "conjecture-table", "--n", "5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,class,det_one_minus,closed_form,matches,anchors");
    assert!(lines[1].starts_with("5,2,\"(3,2)\",6,6,true,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn specht_claims() {
    let out = run(&["specht", "audit", "--n", "5", "--family", "n-2,2'"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["audit"]["offenders"], serde_json::json!(["(3,2)"]));
    let out = run(&["specht", "audit", "--n", "7", "--family", "n-2,2'", "--group", "a_n"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["specht", "mod2-factors", "--shape", "3,1,1", "--family", "n-2,2", "--n", "5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["specht", "fixed-vector", "--n", "7", "--class", "5,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn number_theory_commands() {
    let out = run(&["nt", "disc-verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["bad_primes"], serde_json::json!([2, 3]));
    assert_eq!(v["result"]["discriminant"], "-5673238493794142257152");

    let out = run(&["nt", "lpoly-check", "--primes", "5,7"]);
    assert_eq!(out.status.code(), Some(0));

    // x^9 - 2: Frobenius leaves AGL_2(3) and loses eigenvalue 1 at some prime
    let out = run(&["nt", "frobenius-scan", "--poly=-2,0,0,0,0,0,0,0,0,1", "--pmax", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["scan"]["all_eigenvalue_one"], false);
}
