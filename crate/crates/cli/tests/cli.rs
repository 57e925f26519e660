use std::process::{Command, Output};

use serde_json::Value;

fn hhq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhq")).args(args).env_remove("HHQ_THREADS").output().expect("spawn hhq")
}

fn hhq_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhq")).args(args).env("HHQ_THREADS", threads).output().expect("spawn hhq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn worked_cup_example() {
    for q in ["1", "-1"] {
        for method in ["formula", "delta", "both"] {
            let o = hhq(&["cup", "--q", q, "--m", "4", "--lhs", "0,0,e1,0,0,0", "--n", "2", "--rhs", "0,0,e1,0", "--method", method]);
            assert_eq!(code(&o), 0);
            assert_eq!(stdout(&o).lines().next(), Some("0,0,0,0,e1,0,0,0"), "q={q} {method}");
        }
    }
}

#[test]
fn degree_one_square_vanishes() {
    let o = hhq(&["cup", "--q", "1", "--m", "1", "--lhs", "a,b,c", "--n", "1", "--rhs", "a,b,c", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["product"], "0,0,0,0");
}

#[test]
fn random_pairs_agree() {
    let o = hhq(&["cup", "--q", "-1", "--random-pairs", "20", "--seed", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["methods_agree"], true);
    assert_eq!(v["pairs"], 20);
}

#[test]
fn dims_schema_and_field_independence() {
    let rational = json(&hhq(&["dims", "--q", "1", "--field", "Q", "--max-n", "6"]));
    let modular = json(&hhq(&["dims", "--q", "1", "--field", "Fp:101", "--max-n", "6"]));
    assert_eq!(rational["field"], "Q");
    assert_eq!(modular["field"], "Fp:101");
    assert_eq!(rational["rows"], modular["rows"]);
    let rows = rational["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["dim_ker"], 3);
    assert_eq!(rows[1]["dim_ker"], 6);
}

#[test]
fn dims_flag_generic_q_claims() {
    let v = json(&hhq(&["dims", "--q", "2", "--max-n", "3"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[1]["claimed_dim_ker"], "3");
    assert_eq!(rows[1]["claim_mismatch"], true);
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["dims", "--q", "-1", "--max-n", "10"],
        vec!["dims", "--q", "1/2", "--max-n", "8", "--format", "csv"],
        vec!["quotient", "--q", "1", "--max-n", "8"],
        vec!["basis", "--q", "1", "--max-n", "5"],
    ] {
        let one = hhq_threads("1", &args);
        let four = hhq_threads("4", &args);
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, hhq(&args).stdout, "{args:?}");
    }
}

#[test]
fn invalid_thread_count_is_input_error() {
    assert_eq!(code(&hhq_threads("0", &["dims", "--max-n", "1"])), 2);
    assert_eq!(code(&hhq_threads("many", &["dims", "--max-n", "1"])), 2);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["dims", "--q", "1/0"],
        vec!["dims", "--field", "Fp:100"],
        vec!["dims", "--max-n", "65"],
        vec!["cup", "--m", "1", "--lhs", "c,b,a", "--n", "1", "--rhs", "a,b,c"],
        vec!["cup", "--m", "1", "--lhs", "a,b", "--n", "1", "--rhs", "a,b,c"],
        vec!["cup", "--m", "1", "--lhs", "a+z,b,c", "--n", "1", "--rhs", "a,b,c"],
        vec!["oracle", "--max-n", "5"],
        vec!["nilpotent", "--degree", "1", "--cochain", "e1,0,0"],
        vec!["verify", "--suite", "nonsense"],
    ] {
        let o = hhq(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn io_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("dims.json");
    let o = hhq(&["dims", "--max-n", "1", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("dims.csv");
    let o = hhq(&["dims", "--max-n", "2", "--format", "csv", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert_eq!(text, stdout(&hhq(&["dims", "--max-n", "2", "--format", "csv"])));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = hhq(&["dims", "--q", "-1", "--max-n", "6"]);
    let first = hhq(&["dims", "--q", "-1", "--max-n", "6", "--cache-dir", cache]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = hhq(&["dims", "--q", "-1", "--max-n", "4", "--cache-dir", cache]);
    assert_eq!(first.stdout, fresh.stdout);
    assert_eq!(second.stdout, hhq(&["dims", "--q", "-1", "--max-n", "4"]).stdout);
}

#[test]
fn core_suite_passes() {
    for q in ["0", "1", "-1", "2"] {
        let o = hhq(&["verify", "--suite", "core", "--q", q, "--max-n", "6"]);
        assert_eq!(code(&o), 0, "q={q}");
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert!(v["checks"].as_array().unwrap().len() >= 5);
    }
}

#[test]
fn oracle_suite_side_by_side() {
    let o = hhq(&["verify", "--suite", "oracle", "--q", "2", "--max-n", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["oracle"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["koszul"] == r["bar"]));
}

#[test]
fn exit_status_tracks_suite_result() {
    for q in ["1", "-1", "3"] {
        let o = hhq(&["verify", "--suite", "paper", "--q", q, "--max-n", "6"]);
        let passed = json(&o)["passed"].as_bool().unwrap();
        assert_eq!(code(&o), if passed { 0 } else { 1 }, "q={q}");
    }
}

#[test]
fn quotient_tables() {
    let v = json(&hhq(&["quotient", "--q", "1", "--max-n", "6"]));
    let rows = v["rows"].as_array().unwrap();
    let dims: Vec<u64> = rows.iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1, 0, 2, 0, 3]);
    assert_eq!(rows[2]["labels"][0], "x^{0}y^{2}");
    let v = json(&hhq(&["quotient", "--q", "3", "--max-n", "4"]));
    let dims: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 0, 0, 0]);
    assert!(v["note"].is_string());
}

#[test]
fn nilpotent_verdicts() {
    let v = json(&hhq(&["nilpotent", "--q", "1", "--degree", "1", "--cochain", "a,0,0"]));
    let c = &v["classes"][0];
    assert_eq!(c["nilpotent"], true);
    assert!(c["exponent"].as_u64().unwrap() <= 3);
    let v = json(&hhq(&["nilpotent", "--q", "1", "--degree", "2", "--cochain", "0,0,e1,0"]));
    assert_eq!(v["classes"][0]["nilpotent"], false);
    assert_eq!(v["classes"][0]["agrees"], true);
}
