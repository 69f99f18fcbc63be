//! Runs the binary end to end: example invocations, exit statuses, schema
//! validity and byte-identical reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hodgehh::format::load_algebra;
use hodgehh_core::chainalg::Coefficients;
use hodgehh_core::loday::algebra_corpus;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgehh")).args(args).current_dir(root()).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema_for(report: &Value) -> Value {
    let tag = report["schema"].as_str().expect("schema tag");
    let kind = tag.split('/').nth(1).expect("tag has a kind");
    let file = match kind {
        "hh" | "loday-coeff" => "loday",
        k => k,
    };
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{file}.v1.json"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema is JSON")
}

fn assert_valid(report: &Value) {
    let schema = schema_for(report);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let messages: Vec<String> = match compiled.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{} does not match its schema: {messages:?}", report["schema"]);
}

#[test]
fn dual_numbers_hochschild_betti() {
    let report = json(&["hh", "--algebra", "data/algebras/dual_numbers.alg", "--ring", "Q", "--max-degree", "3"]);
    assert_eq!(report["betti"], serde_json::json!([2, 1, 1, 1]));
    assert_valid(&report);
}

#[test]
fn circle_layer_two_is_the_sign_representation() {
    let report = json(&["layers", "--space", "circle", "--arity", "2", "--level", "2"]);
    let homology = report["homology"].as_array().unwrap();
    assert_eq!(homology.len(), 1);
    assert_eq!(homology[0]["degree"], 2);
    assert_eq!(homology[0]["betti"], 1);
    assert_eq!(report["sign_check"]["applicable"], true);
    assert_eq!(report["sign_check"]["passed"], true);
    assert_valid(&report);
}

#[test]
fn section2_small_corpus_passes() {
    let out = run(&["check-section2", "--corpus", "small"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["end_nat", "kan", "unit_coend"] {
        assert!(report[key]["checked"].as_u64().unwrap() > 0);
        assert_eq!(report[key]["mismatches"], 0);
    }
    assert_valid(&report);
}

#[test]
fn every_subcommand_matches_its_schema() {
    let invocations: &[&[&str]] = &[
        &["loday", "--algebra", "corpus:k[x]/x^2", "--space", "sphere:2", "--max-degree", "2"],
        &["loday-coeff", "--algebra", "data/algebras/dual_numbers.alg", "--module", "data/modules/augmentation_dual.mod"],
        &["loday-coeff", "--algebra", "corpus:k[x]/x^3", "--ring", "Z", "--module", "free", "--max-degree", "2"],
        &["filtration", "--algebra", "data/algebras/truncated_cubic.alg", "--max-degree", "2"],
        &["adams", "--algebra", "corpus:k[x]/x^2", "--r", "2", "--s", "3"],
        &["hodge-q", "--algebra", "data/algebras/square_zero_xy.alg", "--max-degree", "2", "--max-weight", "4"],
        &["layers", "--arity", "3", "--level", "2", "--adams", "-1"],
        &["tw", "--space", "sphere:2", "--top", "3", "--nerve-corpus", "2,3"],
        &["check-prop44", "--arity", "2"],
        &["check-prop61", "--max-level", "2"],
    ];
    for args in invocations {
        assert_valid(&json(args));
    }
}

#[test]
fn csv_output_has_a_header_and_rows() {
    let out = run(&["hh", "--algebra", "corpus:k[x]/x^2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("section,degree,weight,betti,torsion"));
    assert!(lines.next().is_some());
}

#[test]
fn integral_torsion_is_reported_as_strings() {
    // HH_1(Z[x]/x^2) in weight 2 is Z/2
    let report = json(&["hh", "--algebra", "corpus:k[x]/x^2", "--ring", "Z", "--max-degree", "2"]);
    let torsion: Vec<&Value> = report["records"].as_array().unwrap().iter().filter(|r| !r["torsion"].as_array().unwrap().is_empty()).collect();
    assert!(!torsion.is_empty());
    assert!(torsion.iter().all(|r| r["torsion"][0].is_string()));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["filtration", "--algebra", "corpus:k[x]/x^2", "--max-degree", "2", "--threads", "4"][..],
        &["check-prop44", "--arity", "2", "--threads", "3"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let one = run(&["check-prop61", "--max-level", "2", "--threads", "1"]);
    let many = run(&["check-prop61", "--max-level", "2", "--threads", "4"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("hodgehh-cli-{}.json", std::process::id()));
    let out = run(&["hh", "--algebra", "corpus:k", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["betti"], serde_json::json!([1, 0, 0, 0]));
    std::fs::remove_file(path).unwrap();
}

fn diagnostic(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON diagnostic")
}

#[test]
fn validation_failures_exit_with_two() {
    for args in [
        &["hh", "--algebra", "missing.alg"][..],
        &["hh", "--algebra", "corpus:k[x]", "--ring", "Fp(4)"][..],
        &["hh", "--algebra", "corpus:nothing"][..],
        &["layers", "--space", "torus", "--arity", "2", "--level", "1"][..],
        &["hodge-q", "--algebra", "corpus:k[x]", "--ring", "Z"][..],
        &["check-section2", "--corpus", "huge"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(diagnostic(&out)["error"], "validation");
    }
}

#[test]
fn budget_failures_exit_with_three() {
    let out = run(&["layers", "--arity", "6", "--level", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(diagnostic(&out)["error"], "budget");
    let tight = Command::new(env!("CARGO_BIN_EXE_hodgehh"))
        .args(["hh", "--algebra", "corpus:k[x,y]", "--max-degree", "4"])
        .env("HODGEHH_BUDGET_MB", "0")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn identity_operation_composes() {
    let out = run(&["adams", "--algebra", "corpus:k[x]/x^2", "--r", "1", "--s", "2"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["blocks"].as_array().unwrap().iter().all(|b| b["composes"] == true));
}

#[test]
fn shipped_algebras_match_the_corpus() {
    let corpus = algebra_corpus(Coefficients::Rationals);
    for (file, name) in
        [("dual_numbers", "k[x]/x^2"), ("truncated_cubic", "k[x]/x^3"), ("polynomial", "k[x]"), ("square_zero_xy", "k[x,y]/(x^2,y^2)")]
    {
        let (_, parsed) = load_algebra(root().join(format!("data/algebras/{file}.alg")).to_str().unwrap(), None).unwrap();
        let (_, expected) = corpus.iter().find(|(n, _)| *n == name).unwrap();
        assert_eq!(parsed.weights, expected.weights, "{file}");
        for a in 0..parsed.dim() {
            for b in 0..parsed.dim() {
                assert_eq!(parsed.product(a, b), expected.product(a, b), "{file}: {a}·{b}");
            }
        }
    }
}
