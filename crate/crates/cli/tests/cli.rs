//! Drives the installed binary end to end: output pins, determinism, exit
//! codes, file loading, and the witness round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

use ringprob::catalog::builtin_catalog;
use ringprob_cli::ring_to_text;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringprob"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn tmpfile(name: &str, content: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content).expect("tmp file");
    path
}

#[test]
fn catalog_lists_pinned_entries() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("M2_Z2 size=16"), "{text}");
    assert!(text.contains("T2_Z2 size=8"), "{text}");
    assert!(text.lines().count() >= 18, "{text}");
}

#[test]
fn table_reproduces_frozen_rows() {
    let out = run(&["table", "--ring", "Z6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[0];1;1\n");

    let out = run(&["table", "--ring", "T2_Z2"]);
    assert_eq!(stdout(&out), "[0 0 0];5;8\n[0 1 0];3;8\n");

    let out = run(&["table", "--ring", "M2_Z2", "--subring", "upper"]);
    assert!(stdout(&out).starts_with("[0 0 0 0];7;16\n"), "{}", stdout(&out));
}

#[test]
fn table_r_flag_selects_one_row() {
    let out = run(&["table", "--ring", "T2_Z2", "--r", "0 1 0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[0 1 0];3;8\n");

    // Off-support targets report probability zero rather than vanishing.
    let out = run(&["table", "--ring", "T2_Z2", "--r", "1,0,0"]);
    assert_eq!(stdout(&out), "[1 0 0];0;1\n");
}

#[test]
fn oracle_mode_matches_accelerated_output() {
    for args in [
        vec!["table", "--ring", "T2_Z2"],
        vec!["table", "--ring", "M2_Z2", "--subring", "upper"],
    ] {
        let plain = run(&args);
        let mut forced = args.clone();
        forced.push("--oracle");
        let oracle = run(&forced);
        assert_eq!(stdout(&plain), stdout(&oracle));
        assert_eq!(code(&oracle), 0);
    }
}

#[test]
fn file_defined_ring_matches_builtin() {
    let t2 = builtin_catalog()
        .into_iter()
        .find(|e| e.name() == "T2_Z2")
        .expect("builtin T2_Z2");
    let text = ring_to_text(&t2.ring).replacen("ring T2_Z2\n", "ring T2c\n", 1);
    let path = tmpfile("t2_clone.ringdef", &text);
    let out = run(&["table", "--ring", "T2c", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[0 0 0];5;8\n[0 1 0];3;8\n");
}

#[test]
fn verify_single_claim_prints_tab_separated_records() {
    let out = run(&["verify", "--claim", "lemma-2.1"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<&str> = stdout(&out).lines().collect();
    assert_eq!(lines.len(), 20);
    for line in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 4, "{line}");
        assert_eq!(fields[0], "lemma-2.1");
        assert_eq!(fields[2], "PASS");
    }
}

#[test]
fn verify_all_is_green_and_byte_deterministic() {
    let first = run(&["verify", "--all"]);
    assert_eq!(code(&first), 0);
    let text = stdout(&first);
    assert!(text.lines().count() > 4000, "suspiciously few records");
    assert!(text.lines().all(|l| l.split('\t').nth(2) == Some("PASS")));
    assert!(stderr(&first).contains("0 failures"));

    let second = run(&["verify", "--all"]);
    assert_eq!(first.stdout, second.stdout, "stdout must be byte-identical");
}

#[test]
fn verify_rejects_bad_scopes() {
    let out = run(&["verify", "--claim", "thm-9.9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("thm-9.9"));

    let out = run(&["verify"]);
    assert_eq!(code(&out), 2);

    let out = run(&["verify", "--all", "--claim", "lemma-2.1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn file_subring_joins_the_corpus() {
    let path = tmpfile(
        "m2z4_e11.ringdef",
        "subring e11span of M2_Z4\ngen 1 0 0 0\nend\n",
    );
    let out = run(&[
        "verify",
        "--claim",
        "prop-3.2",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let line = stdout(&out)
        .lines()
        .find(|l| l.contains("M2_Z4::e11span"))
        .expect("file subring shows up as an instance");
    assert_eq!(line.split('\t').nth(2), Some("PASS"), "{line}");
}

#[test]
fn witness_round_trips_through_the_binary() {
    let build = run(&[
        "witness",
        "--ring",
        "M2_Z2",
        "--subring",
        "diag",
        "--factor",
        "Z3",
    ]);
    assert_eq!(code(&build), 0);
    let block = stdout(&build);
    assert!(block.starts_with("witness\n"), "{block}");
    assert!(block.contains("right M2_Z2xZ3\n"), "{block}");

    let path = tmpfile("diag_z3.witness", block);
    let check = run(&["witness", "--check", path.to_str().unwrap()]);
    assert_eq!(code(&check), 0);
    let lines: Vec<&str> = stdout(&check).lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|l| l.contains("\tPASS\t")));
}

#[test]
fn corrupted_witness_fails_with_the_right_clause() {
    let build = run(&[
        "witness",
        "--ring",
        "M2_Z2",
        "--subring",
        "diag",
        "--factor",
        "Z2",
    ]);
    assert_eq!(code(&build), 0);

    // Swap the images of the first two beta lines: still a bijection, no
    // longer additive.
    let mut beta_targets = Vec::new();
    let corrupted: String = stdout(&build)
        .lines()
        .map(|line| {
            if let Some(rest) = line.strip_prefix("beta ") {
                beta_targets.push(rest.to_string());
            }
            format!("{line}\n")
        })
        .collect();
    let (first, second) = (beta_targets[0].clone(), beta_targets[1].clone());
    let swap = |line: &str| -> String {
        if line == format!("beta {first}") {
            let from = first.split_whitespace().next().unwrap();
            let to = second.split_whitespace().nth(1).unwrap();
            format!("beta {from} {to}")
        } else if line == format!("beta {second}") {
            let from = second.split_whitespace().next().unwrap();
            let to = first.split_whitespace().nth(1).unwrap();
            format!("beta {from} {to}")
        } else {
            line.to_string()
        }
    };
    let corrupted: String = corrupted.lines().map(|l| swap(l) + "\n").collect();

    let path = tmpfile("diag_z2_bad.witness", &corrupted);
    let check = run(&["witness", "--check", path.to_str().unwrap()]);
    assert_eq!(code(&check), 1);
    let text = stdout(&check);
    assert!(text.contains("beta-bijective\tPASS"), "{text}");
    assert!(text.contains("beta-additive\tFAIL"), "{text}");
    assert!(text.contains("compatibility\tFAIL"), "{text}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let path = tmpfile("broken.ringdef", "ring W\nmul 1 1 : 0\nend\n");
    let out = run(&["table", "--ring", "W", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let out = run(&["table", "--ring", "Nowhere"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("Nowhere"));
}
