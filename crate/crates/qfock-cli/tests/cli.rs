//! End-to-end checks of the binary: exit codes, JSON-lines schemas,
//! determinism, and the round trip of reported states through the state
//! grammar.

use std::process::{Command, Output};

use serde_json::Value;

fn qfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qfock_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(args)
        .env("QFOCK_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .expect("stdout is UTF-8")
        .lines()
        .map(|line| serde_json::from_str(line).expect("each line is a JSON value"))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

#[test]
fn rootdata_reports_the_closed_determinant() {
    let out = qfock(&["rootdata", "--type", "A", "--rank", "2"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["det_label"], "[3]");
    assert_eq!(lines[0]["det"], "q^-2+1+q^2");
    assert_eq!(lines[0]["coxeter"], 3);
    assert_eq!(lines[0]["closed_matches"], true);

    let out = qfock(&["rootdata", "--type", "E", "--rank", "7"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["det_label"], "[2](q^6+q^-6-1)");
    assert_eq!(lines[0]["closed_matches"], true);
}

#[test]
fn rootdata_scan_flags_zeros_only_at_shared_factors() {
    // gcd(4, 2) != 1: warning on stderr, zeros in the scan, exit 1 is not
    // forced because the scan is diagnostic for non-coprime orders.
    let out = qfock(&["rootdata", "--type", "A", "--rank", "1", "--l", "4"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    let checks = lines[1]["det_checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    assert!(checks.iter().any(|c| c["zero"] == true));
    assert_eq!(lines[1]["coprime"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    // Coprime order: no zeros, exit 0.
    let out = qfock(&["rootdata", "--type", "A", "--rank", "1", "--l", "3"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines[1]["coprime"], true);
    assert!(lines[1]["det_checks"].as_array().unwrap().iter().all(|c| c["zero"] == false));
}

#[test]
fn act_matches_the_lowest_mode_examples() {
    // One raising coefficient on the vacuum: a single pure weight term.
    let out = qfock(&["act", "--type", "A", "--rank", "2", "--op", "x+ i=1 n=-1"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["state"], "{} @ eta=[1,0]");
    assert_eq!(lines[0]["coeff"], "1");
    assert_eq!(lines[0]["energy"], 1);
    assert_eq!(lines[1]["terms"], 1);

    // Diagonal torus action picks up the weight pairing.
    let out = qfock(&[
        "act", "--type", "A", "--rank", "1", "--op", "K i=1", "--state", "{} @ eta=[1]",
    ]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["coeff"], "q^2");

    // A divided square of the zero mode annihilates the vacuum.
    let out = qfock(&["act", "--type", "A", "--rank", "1", "--op", "x+ i=1 n=0 r=2"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["terms"], 0);
}

#[test]
fn act_reported_states_reparse() {
    // Level creations leave a partition term; the divided square leaves a
    // doubled weight. Both rendered shapes must re-parse.
    let mut states: Vec<String> = Vec::new();
    for ops in [
        ["--op", "h i=1 k=-2", "--op", "h i=2 k=-1"],
        ["--op", "x+ i=1 n=-2 r=2", "--op", "K i=2"],
    ] {
        let mut args = vec!["act", "--type", "A", "--rank", "2"];
        args.extend(ops);
        let out = qfock(&args);
        assert_eq!(code(&out), 0);
        for line in stdout_lines(&out) {
            if let Some(s) = line["state"].as_str() {
                states.push(s.to_string());
            }
        }
    }
    assert!(states.len() >= 2);
    assert!(states.iter().any(|s| s.contains(":[")));
    for state in &states {
        let again = qfock(&[
            "act", "--type", "A", "--rank", "2", "--op", "D", "--state", state,
        ]);
        assert_eq!(code(&again), 0, "state `{state}` should re-parse");
        let echoed = stdout_lines(&again);
        assert_eq!(echoed[0]["state"], state.as_str());
    }
}

#[test]
fn character_counts_the_small_windows() {
    let out = qfock(&["character", "--type", "A", "--rank", "1", "--depth", "6"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().unwrap()["totals"], serde_json::json!([1, 3, 4, 7, 13, 19, 29]));

    let out = qfock(&["character", "--type", "A", "--rank", "2", "--depth", "2"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().unwrap()["totals"], serde_json::json!([1, 8, 17]));
    // Every multiplicity line carries a weight of the right rank.
    for line in &lines[..lines.len() - 1] {
        assert_eq!(line["eta"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn verify_suites_pass_and_report_cases() {
    let out = qfock(&["verify", "id", "--r", "3"]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l["status"] == "pass" && l["suite"] == "id"));

    let out = qfock(&[
        "verify", "drinfeld", "--type", "A", "--rank", "1", "--depth", "1", "--rmax", "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_lines(&out).iter().all(|l| l["status"] == "pass"));
}

#[test]
fn rootofunity_certifies_the_coprime_order_and_flags_the_shared_one() {
    let out = qfock(&[
        "rootofunity", "--type", "A", "--rank", "2", "--l", "2", "--depth", "3", "irreducible",
    ]);
    assert_eq!(code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["singular_found"], false);
    assert_eq!(lines[0]["kernel_dims"], serde_json::json!([0, 0, 0]));
    assert!(lines[0]["det_checks"].as_array().unwrap().iter().all(|c| c["zero"] == false));

    let out = qfock(&[
        "rootofunity", "--type", "A", "--rank", "2", "--l", "3", "--depth", "2", "irreducible",
    ]);
    assert_eq!(code(&out), 1);
    let lines = stdout_lines(&out);
    assert!(lines[0]["det_checks"].as_array().unwrap().iter().any(|c| c["zero"] == true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    let out = qfock(&[
        "rootofunity", "--type", "A", "--rank", "1", "--l", "3", "--depth", "3", "duals",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_lines(&out).len(), 3);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["character", "--type", "A", "--rank", "2", "--depth", "3"];
    assert_eq!(qfock(&args).stdout, qfock(&args).stdout);

    let suite = [
        "verify", "product", "--type", "A", "--rank", "2", "--depth", "2", "--rmax", "2",
    ];
    let single = qfock_with_threads(&suite, "1");
    let many = qfock_with_threads(&suite, "4");
    assert_eq!(code(&single), 0);
    assert_eq!(single.stdout, many.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    let out = qfock(&["rootdata", "--type", "A", "--rank", "0"]);
    assert_eq!(code(&out), 2);
    let out = qfock(&["act", "--type", "A", "--rank", "1", "--op", "x+ i=1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    let out = qfock(&["act", "--type", "A", "--rank", "1", "--op", "K i=1", "--state", "{} @ [0]"]);
    assert_eq!(code(&out), 2);
    let out = qfock(&["rootofunity", "--type", "A", "--rank", "1", "--l", "0", "--depth", "1", "duals"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn human_mode_is_plain_text() {
    let out = qfock(&["rootdata", "--type", "A", "--rank", "2", "--human"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("det[A]"));
    assert!(serde_json::from_str::<Value>(text.lines().next().unwrap()).is_err());
}
