use std::fs;
use std::process::{Command, Output};

fn pof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pof")).args(args).env_remove("POF_WORKERS").output().expect("run pof")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn nn_prints_fraction() {
    let out = pof(&["nn", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "60/43\n");
    for args in [["--mode", "bisect"], ["--search", "full"]] {
        let out = pof(&["nn", "--n", "5", args[0], args[1]]);
        assert_eq!(stdout(&out), "60/43\n");
    }
}

#[test]
fn verify_reports_all_three() {
    let out = pof(&["verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "solver=8/7 oracle=8/7 paper=8/7\n");
}

#[test]
fn check_rejects_unnormalized_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"n": 2, "m": 2, "columns": [["1/2","1/3"],["1","0"]]}"#).unwrap();
    let out = pof(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ColumnNotNormalized(1, 5/6)"));
}

#[test]
fn check_reports_welfare() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w3.json");
    fs::write(&path, r#"{"n": 3, "m": 3, "columns": [["1/2","1/2","0"],["1/3","1/3","1/3"],["1/3","1/3","1/3"]]}"#)
        .unwrap();
    let out = pof(&["check", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["optimal"], "4/3");
    assert_eq!(v["envy_free_optimal"], "7/6");
    assert_eq!(v["ratio"], "8/7");
}

#[test]
fn check_missing_file_is_input_error() {
    assert_eq!(pof(&["check", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pof(&["nn"]).status.code(), Some(2));
    assert_eq!(pof(&["nn", "--n", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(pof(&["bounds", "--n", "3", "--to", "4"]).status.code(), Some(2));
    assert_eq!(pof(&["nn", "--n", "0"]).status.code(), Some(2));
    assert_eq!(pof(&["nn", "--n", "13", "--search", "full"]).status.code(), Some(2));
}

#[test]
fn table_reproduces_published_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = pof(&["table", "--from", "1", "--to", "9", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let values: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f[2] == "1" {
                f[1].to_string()
            } else {
                format!("{}/{}", f[1], f[2])
            }
        })
        .collect();
    assert_eq!(values, ["1", "1", "8/7", "4/3", "60/43", "3/2", "63/40", "72/43", "9/5"]);
    assert!(text.starts_with("n,p_num,p_den,s_support,r_support\n"));
    assert!(text.contains("\n5,60,43,2:1;3:1;5:3,2:2;3:3\n"));
}

#[test]
fn table_json_is_witness_list() {
    let out = pof(&["table", "--from", "2", "--to", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[1]["ratio"], "8/7");
    assert_eq!(v[1]["s"], serde_json::json!([0, 1, 2]));
}

#[test]
fn witness_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w7.json");
    let out = pof(&["witness", "--n", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n=7 ratio=63/40 certified=true\n");
    let w = pof_core::io::read_witness(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(w.s, vec![0, 2, 1, 0, 0, 0, 4]);
}

#[test]
fn bounds_csv_rows() {
    let out = pof(&["bounds", "--to", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "n,lower,upper,p,holds\n1,1,1,1,true\n2,1,4/3,1,true\n3,1,3/2,8/7,true\n4,4/3,8/5,4/3,true\n"
    );
}

#[test]
fn fuzz_output_is_stable_across_workers() {
    let one = pof(&["--workers", "1", "fuzz", "--n", "4", "--count", "30", "--seed", "7"]);
    let four = pof(&["--workers", "4", "fuzz", "--n", "4", "--count", "30", "--seed", "7"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert!(text.starts_with("instance_id,ratio_num,ratio_den,bound_holds\n"));
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn explore_is_labelled_and_stable() {
    let args = ["explore", "--n", "2", "--m", "3", "--budget", "60", "--seed", "4"];
    let a = pof(&args);
    let b = pof(&[&["--workers", "3"], &args[..]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["label"], "heuristic lower bound");
    assert_eq!(v["evaluations"], 60);
}

#[test]
fn approx_columns_are_marked() {
    let out = pof(&["--approx", "table", "--from", "3", "--to", "3"]);
    assert_eq!(stdout(&out), "n,p_num,p_den,s_support,r_support,p_approx\n3,8,7,2:1;3:2,2:2;3:1,1.142857\n");
}
