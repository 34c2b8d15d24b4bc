use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qmds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).lines().next().unwrap()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qmds-cli-{}-{name}", std::process::id()))
}

#[test]
fn field_descriptor() {
    let o = qmds(&["field", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"m":2,"modulus":[1,1,1],"p":2}"#);
}

#[test]
fn mds_code_over_gf9() {
    let o = qmds(&["mds", "9", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["n"], 10);
    assert_eq!(v["k"], 8);
    assert_eq!(v["mds_verify"], true);
    assert_eq!(v["bch_ht_bound"], 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["mds", "6", "2"][..],
        &["mds", "9", "20"],
        &["reproduce", "7Z"],
        &["shorten", "10,4,4@3", "1"],
        &["field", "2", "2", "--format", "csv"],
        &["nonsense"],
    ] {
        assert_eq!(qmds(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn qmds_reports_absent_weight() {
    let o = qmds(&["qmds", "5", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "7: ProvenAbsent"));
    assert!(text.lines().any(|l| l.starts_with("6: FoundWitness")));
}

#[test]
fn shorten_literature_record() {
    let o = qmds(&["shorten", "10,0,6@3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(9), Some(1), Some(5)));
}

#[test]
fn witness_round_trip() {
    let rec = json(&qmds(&["q2p2", "1"]));
    assert_eq!(rec["n"], 6);
    let path = temp_path("witness.json");
    std::fs::write(&path, rec["witness"].to_string()).unwrap();
    let o = qmds(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!((v["n"].as_u64(), v["d"].as_u64()), (Some(6), Some(4)));

    // a weight-5 word on a length-6 code is not in the puncture code
    let mut bad = rec["witness"].clone();
    bad["support"] = serde_json::json!([1, 2, 3, 4, 5]);
    bad["values"] = serde_json::json!([1, 1, 1, 1, 1]);
    bad["weight"] = Value::from(5);
    std::fs::write(&path, bad.to_string()).unwrap();
    let o = qmds(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verified"], false);
    std::fs::remove_file(&path).ok();
}

#[test]
fn routes_agree() {
    let o = qmds(&["pc", "3", "3", "--route", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["routes_agree"], true);
}

#[test]
fn weights_csv_and_output_file() {
    let path = temp_path("weights.csv");
    let o = qmds(&["weights", "3", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,verdict,method,subsets,samples,seed,witness"));
    let present: Vec<usize> = lines
        .filter(|l| l.contains("FoundWitness"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(present, (4..=10).collect::<Vec<_>>());
    std::fs::remove_file(&path).ok();
}

#[test]
fn figdata_for_q2() {
    let o = qmds(&["figdata", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("q,d,n,status\n"));
    assert!(text.lines().any(|l| l == "2,2,3,absent"));
    assert!(text.lines().any(|l| l == "2,3,5,verified"));
    assert!(text.lines().any(|l| l == "2,4,6,verified"));
}

#[test]
fn reproduce_small_sections() {
    for s in ["6A", "6B"] {
        let o = qmds(&["reproduce", s]);
        assert_eq!(o.status.code(), Some(0), "{s}\n{}", stdout(&o));
        assert!(!stdout(&o).contains("mismatch"));
    }
}

#[test]
fn conjectures_confirmed_for_small_q() {
    let o = qmds(&["conjectures", "--q", "2..3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o)["report"]["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["verdict"] == "confirmed"));
}

#[test]
fn seed_is_reproducible() {
    let a = stdout(&qmds(&["--seed", "7", "weights", "3", "4"]));
    let b = stdout(&qmds(&["--seed", "7", "weights", "3", "4"]));
    assert_eq!(a, b);
}
