//! End-to-end tests for the `deun` binary against the bundled model.

use assert_cmd::Command;
use predicates::prelude::*;

fn model_path() -> String {
    concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../models/food_security.json"
    )
    .to_string()
}

fn deun() -> Command {
    Command::cargo_bin("deun").unwrap()
}

#[test]
fn validate_clean_model_exits_zero() {
    deun()
        .args(["validate", &model_path()])
        .assert()
        .success()
        .stdout(predicate::str::contains("model is valid"));
}

#[test]
fn validate_broken_model_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(model_path()).unwrap();
    // Break a CPD scale parameter.
    let broken = text.replace("\"sigma\": 5.0000000000000000e0", "\"sigma\": 0.0000000000000000e0");
    assert_ne!(broken, text);
    let path = dir.path().join("broken.json");
    std::fs::write(&path, broken).unwrap();
    deun()
        .args(["validate", path.to_str().unwrap()])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("violation"));
}

#[test]
fn missing_file_exits_three() {
    deun()
        .args(["evaluate", "/nonexistent/model.json"])
        .assert()
        .code(3)
        .stderr(predicate::str::contains("error:"));
}

#[test]
fn jtree_on_non_decomposable_model_exits_two() {
    deun()
        .args(["jtree", &model_path()])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error:"));
}

#[test]
fn unknown_decision_exits_one() {
    deun()
        .args(["evaluate", &model_path(), "--decision", "bogus"])
        .assert()
        .code(1);
}

#[test]
fn evaluate_defaults_to_backward_induction_here() {
    // The bundled network is not decomposable, so the default method
    // must fall back to backward induction.
    deun()
        .args(["evaluate", &model_path()])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("method: theorem1")
                .and(predicate::str::contains("d0: 0.196659"))
                .and(predicate::str::contains("d1: 0.173961"))
                .and(predicate::str::contains("d2: 0.181625")),
        );
}

#[test]
fn decompose_output_validates_and_supports_jtree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("closed.json");
    deun()
        .args(["decompose", &model_path(), "--output", out.to_str().unwrap()])
        .assert()
        .success();
    deun()
        .args(["validate", out.to_str().unwrap()])
        .assert()
        .success();
    deun()
        .args(["jtree", out.to_str().unwrap()])
        .assert()
        .success()
        .stdout(predicate::str::contains("clique 0: {1,2,4}"));
    // Both methods agree on the closure.
    let a = deun()
        .args(["evaluate", out.to_str().unwrap(), "--method", "jtree"])
        .assert()
        .success();
    let text = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert!(text.contains("d0: 0.196659"), "{text}");
}

#[test]
fn rank_orders_decisions_best_first() {
    let out = deun()
        .args(["rank", &model_path()])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let d0 = text.find("d0:").unwrap();
    let d2 = text.find("d2:").unwrap();
    let d1 = text.find("d1:").unwrap();
    assert!(d0 < d2 && d2 < d1, "{text}");
}

#[test]
fn oracle_requires_samples_and_is_deterministic() {
    deun().args(["oracle", &model_path()]).assert().code(1);
    let run = |seed: &str| {
        let out = deun()
            .args([
                "oracle",
                &model_path(),
                "--decision",
                "d0",
                "--mc-samples",
                "20000",
                "--seed",
                seed,
            ])
            .assert()
            .success();
        String::from_utf8(out.get_output().stdout.clone()).unwrap()
    };
    let a = run("5");
    let b = run("5");
    let c = run("6");
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.contains("closed-form 0.196659"), "{a}");
}

#[test]
fn structured_outputs_are_json() {
    for args in [
        vec!["evaluate", "--structured"],
        vec!["rank", "--structured"],
        vec!["expand", "--structured"],
        vec!["validate", "--structured"],
        vec![
            "oracle",
            "--structured",
            "--mc-samples",
            "5000",
            "--decision",
            "d1",
        ],
    ] {
        let path = model_path();
        let mut full = vec![args[0], path.as_str()];
        full.extend_from_slice(&args[1..]);
        let out = deun().args(&full).assert().success();
        let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text)
            .unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
        assert!(parsed.is_object(), "{args:?}");
    }
}

#[test]
fn structured_evaluate_has_full_precision() {
    let out = deun()
        .args(["evaluate", &model_path(), "--structured", "--decision", "d0"])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let eu = parsed["results"][0]["eu"].as_f64().unwrap();
    assert!((eu - 0.196659376800895236).abs() < 1e-15);
}

#[test]
fn expand_prints_all_corners() {
    let out = deun()
        .args(["expand", &model_path()])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("0000  weight 0"), "{text}");
    assert!(text.contains("****  weight 1.00000"), "{text}");
    // Later factors condition on earlier attributes' corner bits.
    assert!(text.contains("u(y4|y1*,y2*)") || text.contains("û(y4|y1*,y2*)"), "{text}");
}
