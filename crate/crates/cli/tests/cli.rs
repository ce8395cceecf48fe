use std::process::{Command, Output};

use serde_json::Value;

fn pathcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcx"))
        .args(args)
        .env_remove("PATHCX_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = pathcx(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn bst_table_csv_has_no_separators() {
    let out = pathcx(&["bst-table", "--n-max", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,P1,P1_approx,P2,P2_approx,ratio,P_LB,P_UB_verbatim,P_UB_clamped"
    );
    assert_eq!(
        lines.last().unwrap(),
        "10,14163825,14291780,10634115,10746292,1.33,279782405/32,25866752,26059971"
    );
}

#[test]
fn bst_table_text_groups_thousands() {
    let out = pathcx(&["bst-table", "--n", "10", "--variant", "standard"]);
    assert!(stdout(&out).contains("14,163,825"));
}

#[test]
fn counts_are_strings_in_json() {
    let rows = json(&["bst-table", "--n", "6", "--format", "json"]);
    assert_eq!(rows[0]["n"], 6);
    assert_eq!(rows[0]["P1"], "1659");
    assert_eq!(rows[0]["P2"], "1447");
    assert_eq!(rows[0]["ratio"], "1.15");
}

#[test]
fn paths_and_trace() {
    let v = json(&[
        "paths",
        "iiid",
        "--variant",
        "both",
        "--trace",
        "--format",
        "json",
    ]);
    assert_eq!(v["paths"][0]["paths"], "10");
    assert_eq!(v["paths"][1]["paths"], "8");
    let last: Vec<&Value> = v["trace"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["step"] == 4)
        .collect();
    assert_eq!(last.len(), 4);
    assert_eq!(last[0]["shape"], "10100");
}

#[test]
fn stack_table_totals() {
    let v = json(&["stack-table", "--n-max", "6", "--format", "json"]);
    let totals: Vec<&str> = v["totals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["P"].as_str().unwrap())
        .collect();
    assert_eq!(totals, ["1", "2", "3", "6", "10", "20"]);
}

#[test]
fn profile_fields() {
    let v = json(&["profile", "--n-max", "4", "--format", "json"]);
    let stage3 = &v["stages"][3];
    let keys: Vec<&str> = stage3
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "stage",
            "states",
            "insert_edges",
            "delete_edges_standard",
            "delete_edges_modified"
        ]
    );
    assert_eq!(stage3["states"], "5");
    assert_eq!(stage3["insert_edges"], "20");
}

#[test]
fn bounds_reports_the_verbatim_anomaly() {
    let v = json(&["bounds", "--n-max", "10", "--format", "json"]);
    assert_eq!(v["anomalies"][0]["n"], 2);
    assert_eq!(v["bounds"][1]["P_LB"], "5/2");
    assert!(v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["UB_clamped_ge_P1"] == true));
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn graph_is_dot() {
    let out = pathcx(&["graph", "--n-max", "3", "--variant", "modified"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph bst_states {"));
    assert_eq!(dot.matches("[style=dashed]").count(), 9);
}

#[test]
fn verify_quick_passes() {
    let v = json(&["verify", "--quick", "--format", "json"]);
    assert_eq!(v["summary"][0]["passed"], true);
    assert_eq!(v["summary"][0]["failed"], 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["paths", "idd"][..],
        &["paths", "ixd"],
        &["bst-table", "--format", "dot"],
        &["graph", "--format", "csv"],
        &["graph", "--variant", "both"],
        &["bst-table", "--jobs", "0"],
        &["bst-table", "--n", "0"],
    ] {
        let out = pathcx(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = pathcx(&["paths", "iddi"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"idd\""));
}

#[test]
fn cap_from_flag_and_env() {
    assert_eq!(
        pathcx(&["bst-table", "--n", "6", "--cap", "100"])
            .status
            .code(),
        Some(3)
    );
    let env_only = Command::new(env!("CARGO_BIN_EXE_pathcx"))
        .args(["bst-table", "--n", "6"])
        .env("PATHCX_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(env_only.status.code(), Some(3));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_pathcx"))
        .args(["bst-table", "--n", "6", "--cap", "1000"])
        .env("PATHCX_CAP", "100")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
}

#[test]
fn out_writes_file_and_reports_bad_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = pathcx(&[
        "stack-table",
        "--n",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("n,k,P_nk\n4,0,1\n"));

    let bad = dir.path().join("missing").join("x.csv");
    let out = pathcx(&["stack-table", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}
