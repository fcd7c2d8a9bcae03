//! End-to-end pipeline tests: every document one subcommand emits must be
//! accepted unmodified by the consuming subcommand, and exit codes follow
//! the 0/1/2 policy.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qcm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn build_then_minimize_reports_the_known_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = qcm(&["build", "l0m", "--m", "3", "--out", "l0m3.json"], dir.path());
    assert!(out.status.success());
    let text = stdout_of(&qcm(&["dfa", "minimize", "l0m3.json"], dir.path()));
    assert!(text.contains("states: 4"), "got {text:?}");
    let text = stdout_of(&qcm(&["dfa", "nerode", "l0m3.json"], dir.path()));
    assert!(text.contains("nerode classes: 4"));
}

#[test]
fn minimized_document_is_consumable() {
    let dir = tempfile::tempdir().unwrap();
    qcm(&["build", "lzm", "--z", "0", "--m", "2", "--out", "lzm.json"], dir.path());
    let min_json = stdout_of(&qcm(&["dfa", "minimize", "lzm.json", "--json"], dir.path()));
    write(dir.path(), "min.json", &min_json);
    let text = stdout_of(&qcm(&["dfa", "fcheck", "min.json"], dir.path()));
    assert!(text.contains("witness:"), "got {text:?}");
    assert!(text.contains("z=00"));
    assert!(text.contains("t=11"));
}

#[test]
fn fig3_witness_on_the_divisibility_family() {
    let dir = tempfile::tempdir().unwrap();
    qcm(&["build", "l0m", "--m", "4", "--out", "d.json"], dir.path());
    let text = stdout_of(&qcm(&["dfa", "fig3check", "d.json"], dir.path()));
    assert!(text.contains("p=q0"));
    assert!(text.contains("q=q4"));
    assert!(text.contains("x=0000"));
    assert!(text.contains("y=0001"));
}

#[test]
fn acceptor_runs_and_audits_through_files() {
    let dir = tempfile::tempdir().unwrap();
    qcm(
        &["build", "qfac-l0m", "--m", "7", "--eps", "0.2", "--seed", "3", "--out", "q.json"],
        dir.path(),
    );
    qcm(&["build", "l0m", "--m", "7", "--out", "d.json"], dir.path());
    // member word: probability printed as 1.000000000000
    let text = stdout_of(&qcm(
        &["qfa", "run", "--model", "qfac", "q.json", "--input", "0101010"],
        dir.path(),
    ));
    assert_eq!(text.trim(), "1.000000000000");
    let report = stdout_of(&qcm(
        &["audit", "bound", "q.json", "d.json", "--eps", "0.2"],
        dir.path(),
    ));
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["nerode_classes"], 8);
    assert_eq!(parsed["bound_holds"], true);
    assert_eq!(parsed["distance_holds"], true);
}

#[test]
fn compose_consumes_built_documents() {
    let dir = tempfile::tempdir().unwrap();
    qcm(&["build", "l0", "--out", "l0.json"], dir.path());
    // extract the quantum factor from the built acceptor by rebuilding it
    qcm(
        &["build", "qfac-l0m", "--m", "5", "--eps", "0.3", "--seed", "1", "--out", "q5.json"],
        dir.path(),
    );
    // a hand-written single-state measure-once document
    write(
        dir.path(),
        "mo.json",
        r#"{"model":"mo1qfa","basis":["e0"],"alphabet":["0","1"],
            "initial":[[1.0,0.0]],
            "unitaries":{"0":[[[1.0,0.0]]],"1":[[[1.0,0.0]]]},
            "accepting":["e0"]}"#,
    );
    let composed = stdout_of(&qcm(
        &["compose", "--op", "intersect", "l0.json", "mo.json"],
        dir.path(),
    ));
    write(dir.path(), "composed.json", &composed);
    // the trivial quantum factor accepts everything, so the product is l0
    for (word, expect) in [("10", "1.000000000000"), ("01", "0.000000000000")] {
        let text = stdout_of(&qcm(
            &["qfa", "run", "--model", "qfac", "composed.json", "--input", word],
            dir.path(),
        ));
        assert_eq!(text.trim(), expect, "word {word}");
    }
}

#[test]
fn sweep_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    qcm(
        &["build", "qfac-l0m", "--m", "5", "--eps", "0.3", "--seed", "1", "--out", "q.json"],
        dir.path(),
    );
    qcm(
        &["qfa", "sweep", "q.json", "--maxlen", "3", "--csv", "s.csv"],
        dir.path(),
    );
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "word,p_accept");
    // 1 + 2 + 4 + 8 words plus the header
    assert_eq!(lines.len(), 16);
    assert!(lines[1].starts_with(','));
}

#[test]
fn dcq_round_trip_and_universal_agreement() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "had.json",
        r#"{"states":["qs","qh"],"start":"qs","halt":"qh",
            "delta":[["qs","0","H","L","0","N","qh"],
                     ["qs","1","H","L","1","N","qh"],
                     ["qs","_","H","L","_","N","qh"]]}"#,
    );
    let text = stdout_of(&qcm(&["dcq", "run", "had.json"], dir.path()));
    assert!(text.contains("steps = 1"));
    assert!(text.contains("0.707106781187"));
    let text = stdout_of(&qcm(&["dcq", "decide", "had.json"], dir.path()));
    assert!(text.contains("p1 = 0.500000000000"));
    assert!(text.contains("inconclusive"));
    let encoded = stdout_of(&qcm(&["dcq", "encode", "had.json", "--p", "10"], dir.path()));
    assert!(encoded.trim().ends_with("11110"));
    let bare = stdout_of(&qcm(&["dcq", "encode", "had.json"], dir.path()));
    assert_eq!(encoded.trim().len(), bare.trim().len() + 2);
    let text = stdout_of(&qcm(
        &["dcq", "universal", "had.json", "--p", "1", "--x", "0"],
        dir.path(),
    ));
    assert!(text.contains("outputs agree"));
    let text = stdout_of(&qcm(&["dcq", "trace", "had.json", "--x", "1"], dir.path()));
    assert!(text.lines().next().unwrap().split('\t').count() == 6);
}

#[test]
fn experiment_emits_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    qcm(
        &["experiment", "state-complexity", "--m", "5,7", "--eps", "0.3", "--seed", "2", "--csv", "e.csv"],
        dir.path(),
    );
    let csv = std::fs::read_to_string(dir.path().join("e.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,dfa_states,qfac_classical,qfac_quantum,achieved_eps,bound_holds"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "5");
    assert_eq!(first[1], "6");
    assert_eq!(first[2], "2");
    assert_eq!(first[5], "true");
}

#[test]
fn exit_codes_follow_the_policy() {
    let dir = tempfile::tempdir().unwrap();
    // malformed: missing file
    let out = qcm(&["dfa", "minimize", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // malformed: invalid JSON
    write(dir.path(), "bad.json", "{nope");
    let out = qcm(&["dfa", "minimize", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // malformed: schema-invalid machine (non-unitary matrix)
    write(
        dir.path(),
        "bad_mo.json",
        r#"{"model":"mo1qfa","basis":["e0"],"alphabet":["0"],
            "initial":[[1.0,0.0]],"unitaries":{"0":[[[2.0,0.0]]]},"accepting":[]}"#,
    );
    let out = qcm(
        &["qfa", "run", "--model", "mo1qfa", "bad_mo.json", "--input", "0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // domain: unknown symbol in the word
    qcm(&["build", "l0", "--out", "l0.json"], dir.path());
    write(
        dir.path(),
        "mo.json",
        r#"{"model":"mo1qfa","basis":["e0"],"alphabet":["0","1"],
            "initial":[[1.0,0.0]],
            "unitaries":{"0":[[[1.0,0.0]]],"1":[[[1.0,0.0]]]},
            "accepting":["e0"]}"#,
    );
    let out = qcm(
        &["qfa", "run", "--model", "mo1qfa", "mo.json", "--input", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    // domain: unreachable error target for the multiplier search
    let out = qcm(
        &["build", "qfac-l0m", "--m", "3", "--eps", "0.1", "--seed", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    // model mismatch is malformed
    let out = qcm(
        &["qfa", "run", "--model", "qfac", "mo.json", "--input", "0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
