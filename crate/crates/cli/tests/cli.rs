use std::process::{Command, Output};

fn yanglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yanglab"))
        .args(args)
        .env("YANG_CACHE_DIR", env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn validate_exit_codes() {
    let invalid = yanglab(&["validate", "1 2 ; 2 1", "--n", "2"]);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(stdout(&invalid).starts_with("invalid"));

    let valid = yanglab(&["validate", "1 1 ; 2 3", "--n", "3"]);
    assert_eq!(valid.status.code(), Some(0));
    assert!(stdout(&valid).starts_with("valid"));

    let malformed = yanglab(&["validate", "1 1 ; 2 x", "--n", "3"]);
    assert_eq!(malformed.status.code(), Some(64));

    let out_of_range = yanglab(&["validate", "1 1 ; 2 5", "--n", "3"]);
    assert_eq!(out_of_range.status.code(), Some(64));
}

#[test]
fn validate_json_verdicts() {
    let valid = yanglab(&["validate", "1 1 ; 2 3", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&valid)).expect("json");
    assert_eq!(v["verdict"], "valid");

    let invalid = yanglab(&["validate", "1 -1", "--n", "1", "--format", "json"]);
    assert_eq!(invalid.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&invalid)).expect("json");
    assert_eq!(v["verdict"], "invalid");
}

#[test]
fn expand_enumerates_free_slots() {
    let out = yanglab(&["expand", "1 1 ; ~2 ~3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for line in &lines {
        assert!(line.starts_with("1 1 ; "));
    }
}

#[test]
fn verify_named_top_chain_passes() {
    let out = yanglab(&[
        "verify", "--named", "thm1.1", "--n", "6", "--k", "3", "--mode", "stiefel",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nu: 1"));
    assert!(text.contains("result: pass"));
}

#[test]
fn verify_quotient_cycle_fails_upstairs() {
    let out = yanglab(&[
        "verify", "--named", "thm1.3_c", "--n", "7", "--mode", "stiefel",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("boundary zero: false"));

    let out = yanglab(&[
        "verify", "--named", "thm1.3_c", "--n", "7", "--mode", "grassmann",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_named_chain_is_a_usage_error() {
    let out = yanglab(&["verify", "--named", "nope", "--n", "5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bounds_diff_is_empty_and_reruns_are_identical() {
    let first = yanglab(&["bounds", "--family", "g", "--max-n", "9", "--diff"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(stdout(&first).contains("diff: empty"));

    let second = yanglab(&["bounds", "--family", "g", "--max-n", "9", "--diff"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn bounds_drop_fact_shows_a_diff() {
    let out = yanglab(&[
        "bounds", "--family", "g", "--max-n", "9", "--diff", "--drop-fact", "ix",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("diff: "));
}

#[test]
fn complex_reports_the_planar_index() {
    let out = yanglab(&[
        "complex", "--n", "3", "--k", "2", "--max-dim", "2", "--mode", "grassmann",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim 2: 96 faces"));
    assert!(text.contains("index >= 2"));
}
