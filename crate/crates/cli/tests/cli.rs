use std::process::{Command, Output};

use ordercone::space::Certificate;
use ordercone::Budgets;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordercone"))
        .args(args)
        .env_remove("ORDERCONE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn sign_report() {
    let out = run(&["sign", "--cone", "dehornoy:3", "--word", "s1 S2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sign"], "+");
}

#[test]
fn compare_report() {
    let out = run(&["compare", "--cone", "dehornoy:3", "--g", "S1", "--h", "s2"]);
    assert_eq!(json(&out)["order"], "<");
}

#[test]
fn census_klein() {
    let out = run(&["census", "--group", "klein", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["vectors"].as_array().unwrap().len(), 4);
}

#[test]
fn census_count_table_csv() {
    let out = run(&["census", "--group", "z", "--radius", "4", "--from", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "radius,count\n1,2\n2,2\n3,2\n4,2\n");
}

#[test]
fn csv_rejected_for_non_tabular() {
    let out = run(&["sign", "--cone", "dehornoy:3", "--word", "s1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn dd_witness_b3() {
    let out = run(&["dd-witness", "--n", "3", "--radius", "3", "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["unresolved"].as_array().unwrap().len(), 0);
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len() as u64, v["positive_elements"].as_u64().unwrap());
    let s1 = witnesses.iter().find(|w| w["element"] == "s1").unwrap();
    assert_eq!(s1["witness"], serde_json::json!(["y1", "y2"]));
}

#[test]
fn distance_schema() {
    let out = run(&["distance", "--cone", "klein:+,+", "--other", "klein:+,-", "--resolution", "4"]);
    let v = json(&out);
    assert_eq!(v["agree_radius"], 0);
    assert_eq!(v["distance"], "2^-0");
    assert_eq!(v["exact"], true);
    let out = run(&["distance", "--cone", "dehornoy:3", "--other", "dehornoy:3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "agree_radius,distance,resolution,exact\n4,2^-4,4,false\n");
}

#[test]
fn convexity_violation_replays() {
    let out = run(&["convexity", "--cone", "dehornoy:3", "--convex", "cyclic:s1", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    cert.replay(&Budgets::default()).unwrap();
    let out = run(&["convexity", "--cone", "dehornoy:3", "--convex", "shift:1", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "pass");
}

#[test]
fn budget_exit_code() {
    let out = run(&["ball", "--group", "b3", "--radius", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let out = run(&["ball", "--group", "b3", "--radius", "6", "--budget", "braid_ball_radius_3=6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_ordercone"))
        .args(["ball", "--group", "b3", "--radius", "5"])
        .env("ORDERCONE_BUDGET", "braid_ball_radius_3=5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["size"], 262);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["sign", "--cone", "foo:3", "--word", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["sign", "--cone", "dehornoy:3", "--word", "s7"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["props", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn config_file_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out_path = dir.path().join("report.json");
    std::fs::write(
        &cfg,
        serde_json::json!({
            "command": "census",
            "options": {"group": "z2", "radius": 2, "pin": ["(1,0)", "(0,1)"]},
            "output": out_path,
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["props", "--suite", "braid-axioms", "--n", "3", "--count", "300", "--max-len", "10", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["props", "--suite", "ultrametric", "--count", "100", "--seed", "5"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(c.stdout, run(&["props", "--suite", "ultrametric", "--count", "100", "--seed", "5"]).stdout);
}

#[test]
fn orbit_scan_and_props() {
    let out = run(&["orbit-scan", "--cone", "dehornoy:3", "--conjugator-radius", "3", "--target", "2", "--budget", "braid_ball_radius_3=6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["found"], true);
    let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    cert.replay(&Budgets::experiment()).unwrap();
    let out = run(&["orbit-scan", "--cone", "lattice:0,1;1,0", "--conjugator-radius", "3", "--target", "1"]);
    assert_eq!(json(&out)["found"], false);
    let out = run(&["props", "--suite", "discreteness", "--cone", "dehornoy:3", "--element", "s2", "--radius", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["props", "--suite", "discreteness", "--cone", "lattice:1,r2", "--element", "(1,1)", "--radius", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["props", "--suite", "order-properties", "--cone", "klein:+,+", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["props", "--suite", "cone-axioms", "--cone", "dd:4", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_perturb_soul() {
    let v = json(&run(&["classify", "--spec", "0,1;1,0"]));
    assert_eq!(v["report"]["verdict"], "discrete");
    assert_eq!(v["report"]["least_positive"], serde_json::json!([1, 0]));
    let v = json(&run(&["perturb", "--spec", "0,1;1,0", "--pin", "0,1", "--pin", "3,1", "--coordinate", "1"]));
    assert_eq!(v["short"], "1/8r2,1");
    let out = run(&["soul", "--cone", "dehornoy:3", "--chain", "shift:1", "--chain", "whole", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["largest_biordered"], 0);
}
