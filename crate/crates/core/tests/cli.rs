//! Black-box tests of the `sprime` binary: exit codes, JSON shape, and
//! byte-stability of the output modulo the timing fields.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sprime")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

/// The output with the volatile timing lines removed.
fn stable_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.contains("\"elapsedMs\"") && !l.contains("\"wallMs\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn scratch_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sprime-cli-{}-{name}", std::process::id()))
}

const SMALL_CATALOG: &str = r#"{
  "baseModuli": [4, 6],
  "moduleOrders": [1, 2, 3, 6],
  "sampledPairs": 2,
  "pmZlayerInstances": 60,
  "zlayerModuleOrders": [2, 4, 6]
}"#;

#[test]
fn classify_reports_the_expected_certificate_for_the_z4_extension() {
    let out = run(&[
        "classify",
        "TE(Z, Z/4)",
        "--ideal",
        "(6,1)",
        "--mult-set",
        "(2,0)",
        "--check",
        "s-prime",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["schemaVersion"], "1");
    assert_eq!(doc["command"], "classify");
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["certificate"]["witness"], "2^2");
    assert_eq!(doc["certificate"]["residual"], "3Z");
    assert_eq!(doc["inputs"]["ring"], "TE(Z, Z/4)");
    assert_eq!(doc["inputs"]["ideal"][0], "(6, 1)");
}

#[test]
fn the_same_ideal_is_not_homogeneous() {
    let out = run(&["classify", "TE(Z, Z/4)", "--ideal", "(6,1)", "--check", "homogeneous"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], false);
    assert!(doc.get("certificate").is_none());
}

#[test]
fn classify_works_on_finite_residue_rings() {
    let out = run(&["classify", "Z/6", "--ideal", "2", "--mult-set", "", "--check", "prime"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], true);
}

#[test]
fn s_maximal_certificates_name_a_witness_and_residual_generators() {
    let out = run(&["classify", "Z/12", "--ideal", "0", "--mult-set", "4", "--check", "s-maximal"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["certificate"]["residual"], "3");
    assert!(doc["certificate"]["witness"].is_string());
}

#[test]
fn listing_z12_finds_six_ideals() {
    let out = run(&["list", "Z/12", "--what", "ideals"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["items"].as_array().unwrap().len(), 6);
}

#[test]
fn primes_of_a_finite_extension_contain_the_whole_module_layer() {
    let out = run(&["list", "TE(Z/4, Z/2)", "--what", "spec"]);
    let doc = stdout_json(&out);
    let items = doc["items"].as_array().unwrap();
    assert_eq!(items.len(), 1);
    assert_eq!(items[0]["cardinality"], 4);
}

#[test]
fn spec_s_with_a_unit_generator_equals_spec() {
    let spec = run(&["list", "Z/6", "--what", "spec"]);
    let spec_s = run(&["list", "Z/6", "--mult-set", "5", "--what", "spec-s"]);
    assert_eq!(stdout_json(&spec)["items"], stdout_json(&spec_s)["items"]);
}

#[test]
fn submodules_are_listed_for_extension_rings_only() {
    let out = run(&["list", "TE(Z/4, Z/2)", "--what", "submodules"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["items"].as_array().unwrap().len(), 2);

    let bad = run(&["list", "Z/12", "--what", "submodules"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn infinite_rings_cannot_be_listed() {
    let out = run(&["list", "TE(Z, Z/2)", "--what", "ideals"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("finite"));
}

#[test]
fn syntax_errors_carry_a_byte_position_and_exit_2() {
    let out = run(&["classify", "Z/", "--ideal", "1", "--check", "prime"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at byte 2"));
}

#[test]
fn invalid_module_factors_are_semantic_errors() {
    let out = run(&["classify", "TE(Z/4, Z/3)", "--ideal", "", "--check", "prime"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid module"));
}

#[test]
fn missing_required_flags_exit_2() {
    let out = run(&["classify", "Z/6", "--ideal", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_requires_exactly_one_goal() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "sat", "--examples"]).status.code(), Some(2));
}

#[test]
fn unknown_suite_names_exit_2() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn verify_examples_passes_and_exits_0() {
    let out = run(&["verify", "--examples"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["failures"].as_array().unwrap().len(), 0);
    assert!(doc["report"]["instances"].as_u64().unwrap() > 0);
}

#[test]
fn verify_accepts_a_catalog_file_and_writes_the_report() {
    let catalog = scratch_path("catalog.json");
    let report = scratch_path("report.json");
    std::fs::write(&catalog, SMALL_CATALOG).unwrap();

    let out = run(&[
        "verify",
        "--suite",
        "sat",
        "--catalog",
        catalog.to_str().unwrap(),
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["inputs"]["catalog"], catalog.to_str().unwrap());

    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, doc);

    std::fs::remove_file(&catalog).ok();
    std::fs::remove_file(&report).ok();
}

#[test]
fn searches_report_hits_with_certificates() {
    let catalog = scratch_path("search-catalog.json");
    std::fs::write(&catalog, SMALL_CATALOG).unwrap();
    let out = run(&[
        "verify",
        "--search",
        "nonhomogeneous-s-prime",
        "--catalog",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let hits = doc["report"]["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["certificate"].as_str().is_some_and(|c| !c.is_empty())));
    std::fs::remove_file(&catalog).ok();
}

#[test]
fn repeated_runs_are_byte_identical_modulo_timing() {
    let args = ["classify", "TE(Z, Z/4)", "--ideal", "(6,1)", "--mult-set", "(2,0)", "--check", "s-maximal"];
    assert_eq!(stable_text(&run(&args)), stable_text(&run(&args)));

    let verify_args = ["verify", "--suite", "pm-zlayer"];
    assert_eq!(stable_text(&run(&verify_args)), stable_text(&run(&verify_args)));
}
