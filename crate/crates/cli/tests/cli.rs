//! End-to-end checks of the binary and the corpus error paths.

use std::process::Command;

use skewpbw_cli::runner::{run, CommandKind, RunConfig};
use skewpbw_cli::{load_default, parse_corpus, resolve};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewpbw"))
}

#[test]
fn audit_command_exits_zero_on_default_corpus() {
    let out = binary().arg("audit").output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("status: ok"));
    assert!(text.contains("T10"));
}

#[test]
fn topo_witnesses_do_not_fail_the_run() {
    // the vee space has pm = false with a witness; that is a verdict, not
    // a violation, so the command still exits zero
    let out = binary().arg("topo").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pm: false"));
    assert!(text.contains("status: ok"));
}

#[test]
fn json_report_is_written_and_parses() {
    let dir = std::env::temp_dir().join("skewpbw_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = binary()
        .args(["classify", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["status"], "ok");
    let items = value["items"].as_array().unwrap();
    assert!(!items.is_empty());
    // every classification item carries the full predicate map
    let first = &items[0];
    assert!(first["verdicts"]["semicommutative"]["value"].is_boolean());
    // a known witness shows up structured
    let zn12 = items.iter().find(|i| i["name"] == "zn12").unwrap();
    assert_eq!(zn12["verdicts"]["quasi_baer"]["value"], false);
    assert!(zn12["verdicts"]["quasi_baer"]["witness"]["text"]
        .as_str()
        .unwrap()
        .contains("idempotent"));
}

#[test]
fn schema_violations_abort_with_a_path() {
    let dir = std::env::temp_dir().join("skewpbw_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"rings": [{"name": "x", "kind": "zn", "n": "six"}]}"#).unwrap();
    let out = binary().args(["classify"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("rings[0]"), "stderr: {err}");
}

#[test]
fn unresolved_references_are_per_item_errors() {
    let file = parse_corpus(
        r#"{
            "rings": [{"name": "z6", "kind": "zn", "n": 6}],
            "families": [
                {"name": "ok", "ring": "z6", "sigma": ["id"]},
                {"name": "bad", "ring": "nope", "sigma": ["id"]}
            ]
        }"#,
    )
    .unwrap();
    let corpus = resolve(&file);
    assert!(corpus.families[0].family.is_ok());
    let err = corpus.families[1].family.as_ref().unwrap_err();
    assert!(err.contains("unresolved ring reference"));
    assert!(corpus.has_validation_errors());

    // the batch still runs; the failing item carries its error and the
    // run reports a violation status
    let cfg = RunConfig::default();
    let report = run(&corpus, CommandKind::Classify, &cfg);
    assert_eq!(report.status, "violation");
    let bad = report.items.iter().find(|i| i.name == "bad").unwrap();
    assert!(bad.error.is_some());
    let ok = report.items.iter().find(|i| i.name == "ok").unwrap();
    assert!(ok.error.is_none());
}

#[test]
fn builtin_maps_require_matching_ring_kinds() {
    let file = parse_corpus(
        r#"{
            "rings": [{"name": "z6", "kind": "zn", "n": 6}],
            "families": [{"name": "f", "ring": "z6", "sigma": ["swap"]}]
        }"#,
    )
    .unwrap();
    let corpus = resolve(&file);
    let err = corpus.families[0].family.as_ref().unwrap_err();
    assert!(err.contains("trunc_st"), "got: {err}");
}

#[test]
fn corrupted_raw_tables_are_rejected_with_an_axiom() {
    let file = parse_corpus(
        r#"{
            "rings": [{
                "name": "broken",
                "kind": "raw",
                "add": [0,1,1,0],
                "mul": [0,0,0,0],
                "zero": 0,
                "one": 1
            }]
        }"#,
    )
    .unwrap();
    let corpus = resolve(&file);
    let err = corpus.rings[0].ring.as_ref().unwrap_err();
    assert!(err.contains("axiom"), "got: {err}");
}

#[test]
fn inline_image_arrays_resolve() {
    let file = parse_corpus(
        r#"{
            "rings": [{"name": "z4", "kind": "zn", "n": 4}],
            "families": [{
                "name": "f",
                "ring": "z4",
                "sigma": [{"name": "ident", "images": [0, 1, 2, 3]}]
            }]
        }"#,
    )
    .unwrap();
    let corpus = resolve(&file);
    let (_, family) = corpus.families[0].family.as_ref().unwrap();
    assert!(family.sigmas()[0].is_identity());
}

#[test]
fn default_corpus_resolves_without_errors() {
    let corpus = load_default();
    assert!(!corpus.has_validation_errors());
    assert_eq!(corpus.rings.len(), 8);
    assert_eq!(corpus.families.len(), 9);
    assert_eq!(corpus.extensions.len(), 5);
    assert_eq!(corpus.spaces.len(), 3);
}

#[test]
fn verdict_lookup_helper_finds_items() {
    let corpus = load_default();
    let cfg = RunConfig::default().merged_with_corpus(&corpus);
    let report = run(&corpus, CommandKind::Classify, &cfg);
    let v = skewpbw_cli::runner::item_verdict(&report, "gf4_frobenius", "sigma_rigid")
        .expect("verdict present");
    assert_eq!(v.value, serde_json::json!(true));
}

#[test]
fn builtin_object_form_resolves() {
    let file = parse_corpus(
        r#"{
            "rings": [{"name": "eq5", "kind": "ut2_equal_diag", "n": 5}],
            "families": [{
                "name": "f",
                "ring": "eq5",
                "sigma": [{"builtin": "kill_b"}]
            }]
        }"#,
    )
    .unwrap();
    let corpus = resolve(&file);
    let (_, family) = corpus.families[0].family.as_ref().unwrap();
    assert_eq!(family.sigmas()[0].name(), "kill_b");
    assert!(!family.sigmas()[0].is_injective());
}
