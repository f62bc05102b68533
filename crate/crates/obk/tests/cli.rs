//! End-to-end tests of the `obk` binary: canonical output, pipelines over
//! stdin and files, and the exit-code contract (0 success, 1 input errors,
//! 2 failed verification).

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn obk(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_obk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn obk");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin handle")
            .write_all(text.as_bytes())
            .expect("write stdin");
    } else {
        drop(child.stdin.take());
    }
    let Output {
        status,
        stdout,
        stderr,
    } = child.wait_with_output().expect("wait for obk");
    (
        status.code().unwrap_or(-1),
        String::from_utf8(stdout).expect("utf-8 stdout"),
        String::from_utf8(stderr).expect("utf-8 stderr"),
    )
}

/// Runs the binary, asserting success, and returns stdout.
fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let (code, out, err) = obk(args, stdin);
    assert_eq!(code, 0, "obk {args:?} exited {code}: {err}");
    out
}

/// Runs the binary, asserting exit code 1 and an error mentioning `needle`.
fn fails(args: &[&str], stdin: Option<&str>, needle: &str) {
    let (code, _, err) = obk(args, stdin);
    assert_eq!(code, 1, "obk {args:?} exited {code}: {err}");
    assert!(
        err.contains(needle),
        "stderr of obk {args:?} should mention {needle:?}, got {err:?}"
    );
}

fn invariants_of(doc: &str) -> serde_json::Value {
    serde_json::from_str(&ok(&["invariants"], Some(doc))).expect("invariants json")
}

#[test]
fn build_output_is_canonical_and_deterministic() {
    let first = ok(&["build", "s1s2"], None);
    let second = ok(&["build", "s1s2"], None);
    assert_eq!(first, second);
    assert!(first.ends_with('\n'));
    let doc: serde_json::Value = serde_json::from_str(&first).expect("document json");
    let keys: Vec<&str> = doc
        .as_object()
        .expect("top-level object")
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["bindings", "curves", "monodromy", "pages"]);
}

#[test]
fn build_round_trips_document_files_and_keeps_meta() {
    let dir = tempfile::tempdir().expect("tempdir");
    let plain = dir.path().join("plain.json");
    let tagged = dir.path().join("tagged.json");

    ok(&["build", "s1s2", "--out", plain.to_str().unwrap()], None);
    let canonical = std::fs::read_to_string(&plain).expect("read plain");
    assert_eq!(ok(&["build", plain.to_str().unwrap()], None), canonical);

    let mut doc: serde_json::Value = serde_json::from_str(&canonical).expect("document json");
    doc.as_object_mut()
        .unwrap()
        .insert("meta".into(), serde_json::json!({"note": "hello"}));
    std::fs::write(&tagged, doc.to_string()).expect("write tagged");
    let rebuilt = ok(&["build", tagged.to_str().unwrap()], None);
    let rebuilt: serde_json::Value = serde_json::from_str(&rebuilt).expect("rebuilt json");
    assert_eq!(rebuilt["meta"]["note"], "hello");

    let summed = ok(
        &["bindsum", "--k0", "b0", "--k1", "b1"],
        Some(&std::fs::read_to_string(&tagged).unwrap()),
    );
    let summed: serde_json::Value = serde_json::from_str(&summed).expect("summed json");
    assert_eq!(
        summed["meta"]["note"], "hello",
        "pipelines carry meta through"
    );
}

#[test]
fn bindsum_joins_two_discs_into_the_circle_bundle() {
    let doc = ok(&["build", "two_discs"], None);
    let sum = ok(&["bindsum", "--k0", "b0", "--k1", "b1"], Some(&doc));
    let inv = invariants_of(&sum);
    assert_eq!(inv["b1"], 1);
    assert_eq!(inv["boundary_count"], 2);
    assert_eq!(inv["chi"], 0);
    assert_eq!(inv["components"], 1);
    assert_eq!(inv["torsion"], serde_json::json!([]));
}

#[test]
fn t3_family_scales_with_the_pair_count() {
    let doc = ok(&["build", "t3", "--n", "2"], None);
    let inv = invariants_of(&doc);
    assert_eq!(inv["b1"], 3);
    assert_eq!(inv["boundary_count"], 8);
    assert_eq!(inv["chi"], -8);
    assert_eq!(inv["torsion"], serde_json::json!([]));
}

#[test]
fn stabilize_splits_an_ear_and_keeps_homology() {
    let doc = ok(&["build", "s3_disc"], None);
    let st = ok(&["stabilize", "--at", "b0", "--sign", "-1"], Some(&doc));
    let inv = invariants_of(&st);
    assert_eq!(inv["b1"], 0);
    assert_eq!(inv["boundary_count"], 2);
    assert_eq!(inv["chi"], 0);
    assert_eq!(inv["torsion"], serde_json::json!([]));
}

#[test]
fn lutz_pipeline_keeps_homology_and_adds_circles() {
    let doc = ok(&["build", "s3_hopf_plus"], None);
    let twisted = ok(&["lutz", "--k", "b0"], Some(&doc));
    let inv = invariants_of(&twisted);
    assert_eq!(inv["b1"], 0);
    assert_eq!(inv["boundary_count"], 6);
    assert_eq!(inv["torsion"], serde_json::json!([]));
}

#[test]
fn giroux_pipeline_builds_the_torus_bundle() {
    let doc = ok(&["build", "s1s2"], None);
    let out = ok(&["giroux", "--k0", "b0", "--k1", "b1"], Some(&doc));
    let inv = invariants_of(&out);
    assert_eq!(inv["b1"], 1);
    assert_eq!(inv["torsion"], serde_json::json!([2, 2]));
}

#[test]
fn multisum_accepts_sections_and_rejects_other_braids() {
    let args = ["multisum", "--n", "2", "--k0", "s1", "--k1", "s1"];
    let doc = ok(&args, None);
    assert_eq!(doc, ok(&args, None));
    let parsed: serde_json::Value = serde_json::from_str(&doc).expect("document json");
    assert!(parsed.get("pages").is_some());
    assert_eq!(obk(&["invariants"], Some(&doc)).0, 0);

    fails(
        &["multisum", "--n", "2", "--k0", "s1 s1", "--k1", "s1"],
        None,
        "cycle type 1+1",
    );
    fails(
        &["multisum", "--n", "2", "--k0", "s9", "--k1", "s1"],
        None,
        "out of range",
    );
}

#[test]
fn convexsum_pairs_the_two_bindings() {
    let dir = tempfile::tempdir().expect("tempdir");
    let pos = dir.path().join("pos.json");
    let neg = dir.path().join("neg.json");
    ok(&["build", "s3_disc", "--out", pos.to_str().unwrap()], None);
    ok(&["build", "s3_disc", "--out", neg.to_str().unwrap()], None);
    let pos = pos.to_str().unwrap();
    let neg = neg.to_str().unwrap();

    let sum = ok(
        &["convexsum", "--in", pos, "--neg", neg, "--pairs", "b0:b0"],
        None,
    );
    assert!(
        sum.contains("n.b0"),
        "negative-side labels come back prefixed"
    );
    let inv = invariants_of(&sum);
    assert_eq!(inv["b1"], 1);
    assert_eq!(inv["torsion"], serde_json::json!([]));

    fails(
        &["convexsum", "--in", pos, "--neg", neg, "--pairs", ""],
        None,
        "at least one component",
    );
    fails(
        &["convexsum", "--in", pos, "--neg", neg, "--pairs", "b0"],
        None,
        "not of the form",
    );
    fails(
        &["convexsum", "--in", pos, "--neg", neg, "--pairs", "b0:zz"],
        None,
        "match the two bindings",
    );
}

#[test]
fn verify_runs_named_suites() {
    for suite in ["presets", "relations", "sums"] {
        let (code, out, err) = obk(&["verify", "--suite", suite], None);
        assert_eq!(code, 0, "suite {suite} exited {code}: {err}");
        let report: serde_json::Value = serde_json::from_str(&out).expect("report json");
        assert_eq!(report["pass"], true, "suite {suite}");
        assert!(!report["checks"].as_array().unwrap().is_empty());
    }
    fails(
        &["verify", "--suite", "nosuch"],
        None,
        "unknown verify suite",
    );
}

#[test]
fn invalid_inputs_exit_one() {
    fails(&["build", "nosuch"], None, "unknown preset `nosuch`");
    let doc = ok(&["build", "s1s2"], None);
    fails(
        &["bindsum", "--k0", "zz", "--k1", "b1"],
        Some(&doc),
        "unknown boundary label `zz`",
    );
    fails(
        &["stabilize", "--at", "b0", "--sign", "2"],
        Some(&doc),
        "stabilization sign",
    );
    fails(&["invariants"], Some("{ not json"), "error:");

    let (code, _, _) = obk(&["nosuchcmd"], None);
    assert_eq!(code, 1);
    let (code, _, _) = obk(&["--help"], None);
    assert_eq!(code, 0);
    let (code, _, _) = obk(&["--version"], None);
    assert_eq!(code, 0);
}
