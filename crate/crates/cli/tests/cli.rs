use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn squarewatch(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_squarewatch"))
        .args(args)
        .env_remove("SQUAREWATCH_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn generate_then_analyze_snake() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("snake.g6");
    let path = path.to_str().unwrap();
    let gen = squarewatch(&["generate", "snake", "--d", "7", "--out", path], None);
    assert!(gen.status.success());
    let out = squarewatch(&["analyze", path, "--no-timing"], None);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_lines(&out);
    assert_eq!(reports[0]["status"], "exception-snake");
    assert_eq!(reports[0]["sum_deg2"], 44);
    assert!(reports[0].get("timing_ms").is_none());
}

#[test]
fn adjacency_output_is_accepted_as_input() {
    let gen = squarewatch(&["generate", "peanut", "--d", "8", "--format", "adj"], None);
    assert!(stdout(&gen).starts_with("19 76\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("peanut.txt");
    std::fs::write(&path, stdout(&gen)).unwrap();
    let out = squarewatch(&["analyze", path.to_str().unwrap()], None);
    let reports = json_lines(&out);
    assert_eq!(reports[0]["status"], "exception-peanut");
    assert_eq!(reports[0]["theorem_rhs"]["num"], 304);
    assert!(reports[0]["timing_ms"].is_number());
}

#[test]
fn batch_keeps_order_and_reports_parse_errors_inline() {
    let graphs = stdout(&squarewatch(
        &["random", "--n", "30", "--d", "7", "--count", "4", "--seed", "9"],
        None,
    ));
    let input = format!("{graphs}not a graph\n");
    let out = squarewatch(&["batch", "-", "--jobs", "3", "--no-timing"], Some(&input));
    assert_eq!(out.status.code(), Some(2));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 6);
    let ids: Vec<&str> = lines[..5].iter().map(|l| l["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["line:1", "line:2", "line:3", "line:4", "line:5"]);
    assert!(lines[4]["parse_error"].is_string());
    assert_eq!(lines[5]["summary"]["total"], 5);
    assert_eq!(lines[5]["summary"]["parse_errors"], 1);
    let serial = squarewatch(&["batch", "-", "--jobs", "1", "--no-timing"], Some(&input));
    assert_eq!(stdout(&serial), stdout(&out));
}

#[test]
fn seed_comes_from_the_environment_when_the_flag_is_absent() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_squarewatch"));
        cmd.args(["random", "--n", "40", "--d", "8"]);
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        match env {
            Some(s) => cmd.env("SQUAREWATCH_SEED", s),
            None => cmd.env_remove("SQUAREWATCH_SEED"),
        };
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(Some("17"), None), run(None, Some("17")));
    assert_eq!(run(Some("3"), Some("17")), run(None, Some("17")));
    assert_ne!(run(Some("3"), None), run(None, Some("17")));
}

#[test]
fn lemmas_refuse_irregular_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    std::fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
    let out = squarewatch(&["lemmas", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not regular"));
}

#[test]
fn lemmas_pass_on_a_b_tail() {
    let g = stdout(&squarewatch(
        &["generate", "btail", "--d", "9", "--k", "2", "--x-prime", "4"],
        None,
    ));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("btail.g6");
    std::fs::write(&path, g).unwrap();
    let out = squarewatch(&["lemmas", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let line = &json_lines(&out)[0];
    let lemmas = line["lemmas"].as_array().unwrap();
    assert_eq!(lemmas.len(), 21);
    assert!(lemmas.iter().all(|l| l["verdict"] == "pass"), "{lemmas:?}");
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(
        squarewatch(&["generate", "snake", "--d", "8"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        squarewatch(&["analyze", "/nonexistent/file"], None).status.code(),
        Some(2)
    );
    assert_eq!(squarewatch(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn empty_batch_prints_only_the_summary() {
    let out = squarewatch(&["batch", "-"], Some(""));
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["summary"]["total"], 0);
}
