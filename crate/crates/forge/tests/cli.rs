//! End-to-end tests of the binary: exit codes, output shapes, stdin/stdout
//! plumbing, and the resource guard.

use std::io::Write;
use std::process::{Command, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frankl-forge"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = binary().args(args).output().expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn run_with_stdin(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = binary()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let output = child.wait_with_output().expect("binary finishes");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> (i32, String, String) {
    let output = binary()
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[test]
fn construct_emits_thirty_rows_at_x2() {
    let (code, stdout, _) = run(&["construct", "-x", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 30);
    assert!(stdout.ends_with('\n'));
    assert!(stdout.lines().all(|l| l.ends_with(" S") || l.ends_with(" F")));
}

#[test]
fn construct_rejects_x1() {
    let (code, _, stderr) = run(&["construct", "-x", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("x"), "stderr: {stderr}");
}

#[test]
fn construct_json_has_fifteen_pairs() {
    let (code, stdout, _) = run(&["construct", "-x", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["n"], 12);
    assert_eq!(value["x"], 2);
    assert_eq!(value["pairs"].as_array().unwrap().len(), 15);
}

#[test]
fn construct_rejects_csv() {
    let (code, _, _) = run(&["construct", "-x", "2", "--format", "csv"]);
    assert_eq!(code, 2);
}

#[test]
fn construct_writes_files() {
    let path = std::env::temp_dir().join("frankl_forge_construct_test.sf");
    let (code, stdout, _) = run(&["construct", "-x", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 38); // 2(n + 3) at n = 16
    std::fs::remove_file(path).ok();
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[test]
fn verify_accepts_constructed_systems_via_pipe() {
    for x in 2..=12 {
        let x = x.to_string();
        let (_, document, _) = run(&["construct", "-x", &x]);
        let (code, stdout, _) = run_with_stdin(&["verify"], &document);
        assert_eq!(code, 0, "x={x}");
        assert!(stdout.contains("counterexample confirmed"), "x={x}");
    }
}

#[test]
fn verify_reports_frequencies_at_x3() {
    let (_, document, _) = run(&["construct", "-x", "3"]);
    let (code, stdout, _) = run_with_stdin(&["verify"], &document);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("best element 1 in 9 sets, threshold 10"),
        "stdout: {stdout}"
    );
}

#[test]
fn verify_flags_a_corrupted_head_row() {
    let (_, document, _) = run(&["construct", "-x", "2"]);
    // S_0 = [n] lives on line 1; knock out element 5
    let mut lines: Vec<&str> = document.lines().collect();
    let corrupted_row = "1 1 1 1 0 1 1 1 1 1 1 1 S";
    lines[0] = corrupted_row;
    let corrupted = lines.join("\n");
    let (code, stdout, _) = run_with_stdin(&["verify"], &corrupted);
    assert_eq!(code, 1);
    assert!(stdout.contains("L1 FAIL"), "stdout: {stdout}");
    assert!(stdout.contains("pair 0"), "stdout: {stdout}");
}

#[test]
fn verify_rejects_truncated_documents() {
    let (_, document, _) = run(&["construct", "-x", "2"]);
    let truncated: String = document
        .lines()
        .take(29)
        .map(|l| format!("{l}\n"))
        .collect();
    let (code, _, stderr) = run_with_stdin(&["verify"], &truncated);
    assert_eq!(code, 2);
    assert!(stderr.contains("line"), "stderr: {stderr}");
}

#[test]
fn verify_reads_dash_as_stdin() {
    let (_, document, _) = run(&["construct", "-x", "2"]);
    let (code, _, _) = run_with_stdin(&["verify", "-"], &document);
    assert_eq!(code, 0);
}

#[test]
fn verify_json_is_parseable() {
    let (_, document, _) = run(&["construct", "-x", "2"]);
    let (code, stdout, _) = run_with_stdin(&["verify", "--format", "json"], &document);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["counterexample"], true);
    assert_eq!(value["checks"]["abundance"]["holds"], false);
    assert_eq!(value["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_reimer_only_accepts_abundant_filters() {
    // a system whose family holds abundance: verify exits 1 by default but
    // 0 under --require-reimer-only (conditions themselves are fine)
    let document = "1 0 S\n1 1 F\n0 1 S\n0 1 F\n";
    let (code, stdout, _) = run_with_stdin(&["verify"], document);
    assert_eq!(code, 1, "stdout: {stdout}");
    let (code, _, _) = run_with_stdin(&["verify", "--require-reimer-only"], document);
    assert_eq!(code, 0);
}

// ---------------------------------------------------------------------------
// closure
// ---------------------------------------------------------------------------

#[test]
fn closure_reports_the_headline_numbers() {
    let (code, stdout, _) = run(&["closure", "-x", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("generators = 15"));
    assert!(stdout.contains("closure size = 133"));
    assert!(stdout.contains("15/133"));
}

#[test]
fn closure_histogram_sums_to_the_size() {
    let (code, stdout, _) = run(&["closure", "-x", "4", "--histogram", "--format", "json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["closure_size"], 354);
    let total: u64 = value["histogram"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(total, 354);
}

#[test]
fn closure_lists_all_members_in_order() {
    let (code, stdout, _) = run(&["closure", "-x", "2", "--list"]);
    assert_eq!(code, 0);
    let members: Vec<&str> = stdout.lines().filter(|l| l.starts_with('{')).collect();
    assert_eq!(members.len(), 133);
    assert_eq!(members[0], "{1, 5}");
    assert_eq!(members[1], "{11, 12}");
}

#[test]
fn closure_accepts_a_parsed_document() {
    let (_, document, _) = run(&["construct", "-x", "3"]);
    let (code, stdout, _) = run_with_stdin(&["closure", "--input", "-"], &document);
    assert_eq!(code, 0);
    assert!(stdout.contains("closure size = 233"), "stdout: {stdout}");
}

#[test]
fn closure_needs_a_source() {
    let (code, _, stderr) = run(&["closure"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("-x"), "stderr: {stderr}");
}

#[test]
fn closure_guard_exits_three() {
    let (code, _, stderr) = run_with_env(&["closure", "-x", "2"], "FRANKL_FORGE_MAX_CLOSURE", "50");
    assert_eq!(code, 3);
    assert!(stderr.contains("resource guard"), "stderr: {stderr}");
}

#[test]
fn closure_guard_must_be_numeric() {
    let (code, _, _) = run_with_env(&["closure", "-x", "2"], "FRANKL_FORGE_MAX_CLOSURE", "lots");
    assert_eq!(code, 2);
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[test]
fn sweep_csv_for_the_verified_range() {
    let (code, stdout, _) = run(&["sweep", "--from", "5", "--to", "12", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "x,n,family_size,closure_size,formula_value,matches,ratio");
    assert_eq!(lines.len(), 9);
    for line in &lines[1..] {
        assert!(line.contains(",true,"), "row: {line}");
    }
}

#[test]
fn sweep_exposes_the_x2_mismatch_as_data() {
    let (code, stdout, _) = run(&["sweep", "--from", "2", "--to", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("2,12,15,133,135,false,0.112782"), "{stdout}");
}

#[test]
fn sweep_rejects_inverted_ranges() {
    let (code, _, _) = run(&["sweep", "--from", "6", "--to", "5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["sweep", "--from", "1", "--to", "3"]);
    assert_eq!(code, 2);
}

// ---------------------------------------------------------------------------
// oracle-check
// ---------------------------------------------------------------------------

#[test]
fn oracle_check_agrees_at_x2() {
    let (code, stdout, _) = run(&["oracle-check", "-x", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("105 interval pairs"), "stdout: {stdout}");
    assert!(stdout.contains("agree on every pair"));
}

#[test]
fn oracle_check_budget_exits_three() {
    let (code, _, _) = run(&["oracle-check", "-x", "2", "--budget", "4"]);
    assert_eq!(code, 3);
}

// ---------------------------------------------------------------------------
// global interface properties
// ---------------------------------------------------------------------------

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["construct"]).0, 2);
    assert_eq!(run(&["construct", "-x", "two"]).0, 2);
    // csv is a sweep-only format
    assert_eq!(
        run_with_stdin(&["verify", "--format", "csv"], "1 0 S\n1 1 F\n").0,
        2
    );
    assert_eq!(run(&["closure", "-x", "2", "--format", "csv"]).0, 2);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["closure", "--help"]).0, 0);
}

#[test]
fn diagnostics_go_to_stderr() {
    let (code, stdout, stderr) = run(&["construct", "-x", "1"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(!stderr.is_empty());
}

#[test]
fn exit_codes_stay_in_range() {
    let cases: Vec<(i32, String)> = vec![
        run(&["construct", "-x", "2"]),
        run(&["construct", "-x", "0"]),
        run(&["sweep", "--from", "9", "--to", "2"]),
        run_with_env(&["closure", "-x", "3"], "FRANKL_FORGE_MAX_CLOSURE", "10"),
        run_with_stdin(&["verify"], "garbage\n"),
    ]
    .into_iter()
    .map(|(code, _, stderr)| (code, stderr))
    .collect();
    for (code, stderr) in cases {
        assert!((0..=3).contains(&code), "code {code}, stderr: {stderr}");
    }
}
