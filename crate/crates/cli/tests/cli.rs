//! End-to-end runs of the `youngwall` binary: outputs and exit codes.

use std::fs;
use std::process::{Command, Output};

fn youngwall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_youngwall"))
        .args(args)
        .env_remove("YW_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_writes_graph_json() {
    let out = youngwall(&["gen", "A", "2", "--lambda", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["context"]["family"], "A");
    assert_eq!(value["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(value["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn gen_dot_counts_lines() {
    let out = youngwall(&["gen", "B", "3", "--lambda", "0,0,1", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let edges = text.matches(" -> ").count();
    // Colours 1 and 2 swap adjacent signs; colour 3 flips the last one.
    assert_eq!(edges, 2 + 2 + 4);
    assert_eq!(text.lines().count(), 8 + edges + 3);
}

#[test]
fn verify_passes_and_reports() {
    let out = youngwall(&["verify", "C", "3", "--lambda", "0,1,0", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("14"), "{text}");
    assert!(text.trim_end().ends_with("result: pass"), "{text}");
}

#[test]
fn files_round_trip_through_export_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("d4.json");
    let dot = dir.path().join("d4.dot");
    let json_arg = json.to_str().unwrap();
    let out = youngwall(&["gen", "D", "4", "--lambda", "0,0,1,1", "--out", json_arg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = youngwall(&["verify", "--input", json_arg]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = youngwall(&["export", json_arg, "--format", "dot", "--out", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    // A graph with a missing node is read but fails the checks.
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let last = value["nodes"].as_array().unwrap().len() - 1;
    value["nodes"].as_array_mut().unwrap().pop();
    value["edges"]
        .as_array_mut()
        .unwrap()
        .retain(|e| e[0] != last && e[2] != last);
    fs::write(&json, value.to_string()).unwrap();
    let out = youngwall(&["verify", "--input", json_arg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result: fail"));
}

#[test]
fn hl_prints_both_extremal_walls() {
    let out = youngwall(&["hl", "B", "3", "--lambda", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("H {")));
    assert!(text.lines().any(|l| l.starts_with("L {")));
    assert!(text.contains("lambda = "));
}

#[test]
fn fixtures_all_pass() {
    let out = youngwall(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.lines().filter(|l| l.starts_with("ok ")).count() >= 30);
}

#[test]
fn thread_count_does_not_change_output() {
    let outputs: Vec<Vec<u8>> = ["1", "4"]
        .into_iter()
        .map(|threads| {
            let out = Command::new(env!("CARGO_BIN_EXE_youngwall"))
                .args(["gen", "C", "3", "--lambda", "1,0,1"])
                .env("YW_THREADS", threads)
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(0));
            out.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn cap_refusal_exits_one() {
    let out = youngwall(&["gen", "B", "3", "--lambda", "9,9,9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = youngwall(&["gen", "A", "3", "--lambda", "1,1,1", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["gen", "A", "3", "--lambda", "1,0"][..],
        &["gen", "A", "2", "--lambda", "-1,0"],
        &["gen", "E", "6", "--lambda", "1,0,0,0,0,0"],
        &["gen", "D", "3", "--lambda", "1,0,0"],
        &["frobnicate"],
        &["verify"],
    ] {
        assert_eq!(youngwall(args).status.code(), Some(2), "{args:?}");
    }
}
