use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov-shap")).args(args).output().expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov-shap")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

/// Deterministic values in [-1, 1) without a random number generator.
fn scrambled(seed: usize, n: usize) -> Vec<f64> {
    (0..n).map(|k| ((seed * 7919 + k * 104_729) % 2000) as f64 / 1000.0 - 1.0).collect()
}

fn three_state_model(dir: &TempDir) -> String {
    let rows = |seed: usize| (0..3).map(|r| scrambled(seed + r, 3)).collect::<Vec<_>>();
    write(
        dir,
        "model.json",
        &json!({
            "alphabet": ["a", "b"],
            "alpha": scrambled(1, 3),
            "beta": scrambled(2, 3),
            "transitions": {"a": rows(10), "b": rows(20)}
        }),
    )
}

#[test]
fn constant_model_has_zero_scores() {
    let c = data("constant.json");
    let p = data("chain.json");
    let out = run(&["shap-wa", "--model", c.to_str().unwrap(), "--distribution", p.to_str().unwrap(), "--instance", "abba", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let scores = report["scores"].as_array().unwrap();
    assert_eq!(scores.len(), 4);
    for s in scores {
        assert!(s["score"].as_f64().unwrap().abs() < 1e-12);
    }
    assert_eq!(report["mode"], "classic");
}

#[test]
fn verify_random_instance_both_modes() {
    let dir = TempDir::new().unwrap();
    let model = three_state_model(&dir);
    let chain = data("chain.json");
    for mode in ["classic", "paper"] {
        let out = run(&[
            "verify", "--model", &model, "--distribution", chain.to_str().unwrap(), "--instance", "abbab",
            "--mode", mode, "--format", "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let dev = stdout_json(&out)["verify"]["max_abs_dev"].as_f64().unwrap();
        assert!(dev <= 1e-8);
    }
}

#[test]
fn tree_and_formula_verify_against_subset_enumeration() {
    let tree = data("tree.json");
    let formula = data("formula.json");
    for dist in ["bits.json", "bits_correlated.json"] {
        let dist = data(dist);
        for mode in ["classic", "paper"] {
            for (kind, model) in [("dt", &tree), ("dnf", &formula)] {
                let out = run(&[
                    "verify", "--kind", kind, "--model", model.to_str().unwrap(), "--distribution",
                    dist.to_str().unwrap(), "--instance", "1011", "--mode", mode,
                ]);
                assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
            }
        }
    }
}

#[test]
fn verbose_terms_recombine_to_score() {
    let dir = TempDir::new().unwrap();
    let model = three_state_model(&dir);
    let chain = data("chain.json");
    for mode in ["classic", "paper"] {
        let out = run(&[
            "shap-wa", "--model", &model, "--distribution", chain.to_str().unwrap(), "--instance", "babba",
            "--mode", mode, "--format", "json", "--verbose",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let report = stdout_json(&out);
        for s in report["scores"].as_array().unwrap() {
            let n = 5.0;
            let total: f64 = s["terms"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    let k = t["k"].as_f64().unwrap();
                    let coef = if mode == "classic" { 1.0 / (n - k) } else { 1.0 / k };
                    coef * (t["shap1"].as_f64().unwrap() - t["shap2"].as_f64().unwrap())
                })
                .sum();
            assert!((total - s["score"].as_f64().unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let model = three_state_model(&dir);
    let chain = data("chain.json");
    let args = [
        "shap-wa", "--model", &model, "--distribution", chain.to_str().unwrap(), "--instance", "abbaab",
        "--format", "json", "--verbose",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, run(&args).stdout);
    assert_eq!(first.stdout, run_with_env(&args, "SHAP_MARKOV_THREADS", "1").stdout);
    assert_eq!(first.stdout, run_with_env(&args, "SHAP_MARKOV_THREADS", "0").stdout);
}

#[test]
fn single_position_and_binary_chain_distribution() {
    let dir = TempDir::new().unwrap();
    let chain = write(
        &dir,
        "binary_chain.json",
        &json!({"alphabet": ["0", "1"], "init": [0.4, 0.6], "kind": "stationary", "matrix": [[0.7, 0.3], [0.2, 0.8]]}),
    );
    let formula = data("formula.json");
    let out = run(&[
        "verify", "--kind", "dnf", "--model", formula.to_str().unwrap(), "--distribution", &chain, "--instance", "0110",
        "--position", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["scores"].as_array().unwrap().len(), 1);
    assert_eq!(report["scores"][0]["position"], 3);
}

#[test]
fn exit_codes() {
    let counter = data("counter.json");
    let chain = data("chain.json");
    let (m, p) = (counter.to_str().unwrap(), chain.to_str().unwrap());

    let missing = run(&["shap-wa", "--model", "/nonexistent.json", "--distribution", p, "--instance", "ab"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent.json"));

    let bad_symbol = run(&["shap-wa", "--model", m, "--distribution", p, "--instance", "abxa"]);
    assert_eq!(bad_symbol.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_symbol.stderr).contains("position 3"));

    let bad_position = run(&["shap-wa", "--model", m, "--distribution", p, "--instance", "ab", "--position", "3"]);
    assert_eq!(bad_position.status.code(), Some(1));

    let usage = run(&["shap-wa", "--bogus"]);
    assert_eq!(usage.status.code(), Some(1));

    let strict = run(&["verify", "--model", m, "--distribution", p, "--instance", "abbab", "--mode", "paper", "--tolerance", "0"]);
    assert_eq!(strict.status.code(), Some(2), "{}", String::from_utf8_lossy(&strict.stdout));

    let too_long = run(&["verify", "--model", m, "--distribution", p, "--instance", "abababababababa", "--position", "1"]);
    assert_eq!(too_long.status.code(), Some(3));
}

#[test]
fn algebra_commands() {
    let counter = data("counter.json");
    let identity = data("identity.json");
    let c = counter.to_str().unwrap();
    // Each of the 8 words of length 3 contributes its number of b's.
    let out = run(&["algebra", "partition", c, "--length", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!(12.0));

    let projected = run(&["algebra", "project", c, identity.to_str().unwrap()]);
    assert_eq!(projected.status.code(), Some(0));
    let doc = stdout_json(&projected);
    assert_eq!(doc["alpha"].as_array().unwrap().len(), 2);

    let product = run(&["algebra", "product", c, c]);
    let sum = run(&["algebra", "sum", c, c]);
    assert_eq!(stdout_json(&product)["alpha"].as_array().unwrap().len(), 4);
    assert_eq!(stdout_json(&sum)["alpha"].as_array().unwrap().len(), 4);
}
