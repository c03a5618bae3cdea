use std::process::{Command, Output};

use serde_json::Value;

fn kmetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmetric"))
        .args(args)
        .env_remove("KMETRIC_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = kmetric(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn analyze_reports_dimension_basis_and_certificate() {
    let (v, code) = json(&["analyze", "--family", "petersen", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["max_k"], 6);
    let r = &v["results"][0];
    assert_eq!(r["dim_k"], 4);
    assert_eq!(r["status"], "exact");
    assert_eq!(r["basis"].as_array().unwrap().len(), 4);
    assert_eq!(r["certificate"]["valid"], true);

    let (v, _) = json(&["analyze", "--family", "complete:5", "--k", "3"]);
    assert_eq!(v["results"][0]["dim_k"], "inf");
    assert!(v["results"][0]["basis"].is_null());
    let (v, _) = json(&["analyze", "--family", "cycle:7", "--k", "6"]);
    assert_eq!(v["results"][0]["dim_k"], 7);
}

#[test]
fn analyze_several_k_and_bisectors() {
    let (v, _) = json(&["analyze", "--family", "path:3", "--k", "1,2,3", "--bisectors"]);
    let dims: Vec<&Value> = v["results"].as_array().unwrap().iter().map(|r| &r["dim_k"]).collect();
    assert_eq!(dims, [&Value::from(1), &Value::from(2), &Value::from("inf")]);
    let bis = v["bisectors"].as_array().unwrap();
    assert_eq!(bis.len(), 3);
    let b13 = bis.iter().find(|b| b["pair"] == serde_json::json!(["v1", "v3"])).unwrap();
    assert_eq!(b13["bisector"], serde_json::json!(["v2"]));
}

#[test]
fn sequence_compares_with_closed_forms() {
    let (v, code) = json(&["sequence", "--family", "cycle:8"]);
    assert_eq!(code, 0);
    assert_eq!(v["sequence"], serde_json::json!([2, 3, 4, 6, 7, 8]));
    assert_eq!(v["tail_start"], 7);
    assert_eq!(v["verdict"], "PASS");
    let (v, _) = json(&["sequence", "--family", "lollipop:5,4"]);
    assert_eq!(v["expectation"], "prefix");
    let verdicts: Vec<&str> =
        v["comparison"].as_array().unwrap().iter().map(|c| c["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["PASS", "PASS", "PASS", "PASS", "UNKNOWN"]);
    let (v, _) = json(&["sequence", "--family", "grid-ball:2,2"]);
    assert_eq!(v["verdict"], "UNKNOWN");
}

#[test]
fn sequence_csv_uses_inf_sentinel() {
    let out = kmetric(&["sequence", "--family", "complete:4", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,dim_k,expected,verdict\n1,3,3,PASS\n2,4,4,PASS\n3,inf,inf,PASS\n");
    let out = kmetric(&["sequence", "--family", "cycle:6", "--k-max", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,dim_k,expected,verdict\n1,2,2,PASS\n2,3,3,PASS\n");
}

#[test]
fn edge_list_and_json_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("c5.txt");
    std::fs::write(&edges, "# five-cycle\na b\nb c\nc d\nd e\ne a\n").unwrap();
    let (v, code) = json(&["sequence", "--input", edges.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["sequence"], serde_json::json!([2, 3, 4, 5]));

    let space = dir.path().join("line.json");
    std::fs::write(&space, r#"{"labels": ["a", "b", "c"], "distances": [[0, "1/2", 1], ["1/2", 0, "1/2"], [1, "1/2", 0]]}"#).unwrap();
    let (v, _) = json(&["sequence", "--input", space.to_str().unwrap()]);
    assert_eq!(v["sequence"], serde_json::json!([1, 2]));
}

#[test]
fn truncated_analysis() {
    // P5 truncated at 2: endpoints no longer resolve
    let (v, _) = json(&["analyze", "--family", "path:5", "--t", "1"]);
    assert_eq!(v["t"], "1");
    assert!(v["results"][0]["dim_k"].as_u64().unwrap() > 1);
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["sequence", "--family", "cycle:2"][..],
        &["sequence", "--family", "banana"],
        &["sequence", "--input", "/nonexistent/file.json"],
        &["sequence", "--family", "petersen", "--input", "x.json"],
        &["analyze", "--family", "petersen", "--k", "0"],
        &["analyze", "--family", "petersen", "--t", "-1"],
        &["verify", "--suite", "nope"],
        &["join", "--family", "path:3", "--t", "1"],
        &["join", "--family", "path:3", "--family", "path:3", "--t", "1"],
    ] {
        let out = kmetric(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"labels": ["a", "b", "c"], "distances": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}"#).unwrap();
    let out = kmetric(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("triangle"));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let out = kmetric(&["analyze", "--family", "grid-ball:2,8", "--budget-secs", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["status"], "bounded");
    assert!(r["lower_bound"].as_u64().unwrap() <= r["dim_k"].as_u64().unwrap());

    let out = Command::new(env!("CARGO_BIN_EXE_kmetric"))
        .args(["analyze", "--family", "grid-ball:2,8"])
        .env("KMETRIC_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("budget exhausted"));
}

#[test]
fn join_reports_table_and_space() {
    let (v, code) = json(&["join", "--family", "path:3", "--family", "path:3", "--t", "3", "--k", "1,2", "--disambiguate"]);
    assert_eq!(code, 0);
    assert_eq!(v["trivial_case"], true);
    for row in v["table"].as_array().unwrap() {
        assert_eq!(row["relation"], "=");
    }
    assert_eq!(v["space"]["labels"][0], "L.v1");
    assert_eq!(v["space"]["distances"][0][3], "3");
}

#[test]
fn verify_suites_pass_and_serialize() {
    let (v, code) = json(&["verify", "--suite", "monotonicity", "--random", "100", "--n", "8", "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    for p in v["suites"][0]["properties"].as_array().unwrap() {
        assert_eq!(p["cases"], 100);
        assert_eq!(p["passed"], 100);
    }
    let (v, code) = json(&["verify", "--suite", "bipartite", "--family", "grid-ball:2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"][0]["properties"][0]["cases"], 1);
    let (v, code) = json(&["verify", "--suite", "truncation", "--random", "5", "--s", "1/2", "--t", "3/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"][0]["properties"][0]["cases"], 5);
    let out = kmetric(&["verify", "--suite", "bipartite", "--family", "petersen"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not bipartite"));
}

#[test]
fn parallel_mode_agrees() {
    let (seq, _) = json(&["sequence", "--family", "petersen"]);
    let (par, _) = json(&["sequence", "--family", "petersen", "--parallel"]);
    assert_eq!(seq["sequence"], par["sequence"]);
}
