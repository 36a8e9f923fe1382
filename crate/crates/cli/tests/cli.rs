use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcount"))
        .args(args)
        .env_remove("MONODROMY_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn poly_pairs_from_genus() {
    let out = run(&["poly", "--n", "2", "--g", "1", "--prank", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["polynomial"], "q^6 - 2*q^5 - q^4 + 4*q^3 - q^2 - 2*q + 1");
    assert_eq!(
        v["coefficients"],
        serde_json::json!([1, -2, -1, 4, -1, -2, 1])
    );
    assert_eq!(
        v["checks"]["laurent_quotient"]["expression"],
        "q^2 - q - 1 + q^-1"
    );
    assert_eq!(v["checks"]["degree"]["monic"], true);
}

#[test]
fn poly_small_cases() {
    let v = json(&run(&["poly", "--n", "1", "--k", "3", "--mode", "ss"]));
    assert_eq!(v["polynomial"], "q^3 - 3*q^2 + 3*q - 1");
    let v = json(&run(&[
        "poly", "--n", "2", "--k", "2", "--mode", "conj", "--q", "2",
    ]));
    assert_eq!(v["values"][0]["value"], 5);
    assert!(v["checks"]["degree"].is_null());
}

#[test]
fn empty_tuple_counts_one() {
    let out = run(&["poly", "--n", "2", "--k", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["polynomial"], "1");
    assert!(v["checks"]["laurent_quotient"].is_null());
}

#[test]
fn wide_values_are_strings() {
    let v = json(&run(&["poly", "--n", "3", "--k", "4", "--q", "1000"]));
    let value = &v["values"][0]["value"];
    assert!(value.is_string(), "{value}");
    assert!(value.as_str().unwrap().len() > 19);
}

#[test]
fn verify_rows() {
    let out = run(&[
        "verify", "--n", "2", "--k", "2", "--q", "2,3,4,5", "--mode", "ss",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let counts: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["brute_force"]["count"].as_str().unwrap())
        .collect();
    assert_eq!(counts, ["9", "256", "2025", "9216"]);
    let rec = &v["rows"][0]["brute_force"];
    for key in ["n", "q", "k", "mode", "count"] {
        assert!(!rec[key].is_null(), "missing {key}");
    }

    let v = json(&run(&["verify", "--n", "1", "--k", "4", "--q", "7"]));
    assert_eq!(v["rows"][0]["predicted"], "1296");
    assert_eq!(v["all_match"], true);

    let out = run(&["verify", "--n", "3", "--k", "2", "--q", "2", "--mode", "ss"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["rows"][0]["predicted"], "609");
}

#[test]
fn verify_other_modes() {
    assert_eq!(
        code(&run(&[
            "verify", "--n", "2", "--k", "2", "--q", "2,3", "--mode", "mixed"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "verify", "--n", "2", "--k", "2", "--q", "2,3", "--mode", "conj"
        ])),
        0
    );
}

#[test]
fn census_rows() {
    let v = json(&run(&["census", "--n", "2", "--q", "3"]));
    let observed: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["observed"].as_u64().unwrap())
        .collect();
    assert_eq!(observed, [3, 2, 1]);
    assert_eq!(v["all_match"], true);
    let v = json(&run(&["census", "--n", "2", "--q", "2"]));
    assert_eq!(v["rows"][2]["observed"], 0);
    assert_eq!(v["rows"][2]["predicted"], 0);
    let v = json(&run(&["census", "--n", "1", "--q", "5"]));
    assert_eq!(v["rows"][0]["observed"], 4);
}

#[test]
fn divisibility_default_corpus_passes() {
    let out = run(&["divisibility"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "pass");
}

#[test]
fn divisibility_single_group() {
    let v = json(&run(&[
        "divisibility",
        "--group",
        "S3",
        "--k",
        "2",
        "--S",
        "2",
    ]));
    let report = &v["groups"][0]["divisibility"][0];
    assert_eq!(report["quotient"], "3/2");
    assert_eq!(report["hom_count"], "9");
    assert_eq!(report["verdict"], "pass");

    let v = json(&run(&["divisibility", "--group", "C6", "--n", "3"]));
    let frob = &v["groups"][0]["frobenius"];
    assert_eq!(frob.as_array().unwrap().len(), 1);
    assert_eq!(frob[0]["count"], 3);
    assert_eq!(frob[0]["verdict"], "pass");
}

#[test]
fn divisibility_custom_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.txt");
    fs::write(&path, "D5 5 (1 2 3 4 5) (2 5)(3 4)\n").unwrap();
    let out = run(&["divisibility", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["groups"][0]["order"], 10);

    fs::write(&path, "bad 3 (1 4)\n").unwrap();
    assert_eq!(
        code(&run(&["divisibility", "--corpus", path.to_str().unwrap()])),
        2
    );
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["poly", "--n", "2", "--k", "1", "--mode", "mixed"][..],
        &["poly", "--n", "0", "--k", "2"],
        &["poly", "--n", "7", "--k", "2"],
        &["poly", "--n", "2", "--g", "1", "--prank", "2"],
        &["poly", "--n", "2", "--k", "2", "--g", "1"],
        &["poly", "--n", "2", "--k", "2", "--mode", "bogus"],
        &["verify", "--n", "2", "--k", "2", "--q", "6"],
        &["verify", "--n", "3", "--k", "2", "--q", "7"],
        &["census", "--n", "2", "--q", "1"],
        &["divisibility", "--group", "Nope"],
        &["divisibility", "--S", "4"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn budget_override_lifts_depth_limit() {
    let out = run(&["poly", "--n", "7", "--k", "1", "--budget-override"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["degree"], 49);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["poly", "--n", "3", "--k", "3", "--q", "2,3"][..],
        &["verify", "--n", "2", "--k", "3", "--q", "2,3"],
        &["divisibility", "--group", "GL2F3"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let args = ["poly", "--n", "3", "--k", "2"];
    let plain = run(&args).stdout;
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache", cache.to_str().unwrap()]);
    assert_eq!(run(&with_cache).stdout, plain);
    assert!(cache.exists());
    assert_eq!(run(&with_cache).stdout, plain);
}

#[test]
fn env_cache_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.json");
    let env = dir.path().join("env.json");
    let out = Command::new(env!("CARGO_BIN_EXE_repcount"))
        .args([
            "poly",
            "--n",
            "2",
            "--k",
            "2",
            "--cache",
            flag.to_str().unwrap(),
        ])
        .env("MONODROMY_CACHE", &env)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(env.exists());
    assert!(!flag.exists());
}

#[test]
fn unreadable_cache_is_ignored_and_kept() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    fs::write(&cache, "not json").unwrap();
    let out = run(&[
        "poly",
        "--n",
        "2",
        "--k",
        "2",
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(&cache).unwrap(), "not json");
}

// Cache holding a single doctored entry: SS(0, 1, 1) = numerator / (q - 1).
fn poisoned_cache(dir: &tempfile::TempDir, numerator: &str) -> String {
    let path = dir.path().join("poison.json");
    let entry = format!(
        r#"{{"entries":[{{"level":0,"r":1,"m":1,"mode":"ss","value":{{"num":{{"var":"q","coeffs":[{numerator}]}},"den":{{"var":"q","coeffs":[[-1,1],[1,1]]}}}}}}]}}"#
    );
    fs::write(&path, entry).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cache = poisoned_cache(&dir, "[2,1]");
    let out = run(&[
        "verify", "--n", "1", "--k", "1", "--q", "4", "--cache", &cache,
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["all_match"], false);
}

#[test]
fn invariant_violation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cache = poisoned_cache(&dir, "[1,2]");
    let out = run(&["poly", "--n", "1", "--k", "1", "--cache", &cache]);
    assert_eq!(code(&out), 3);
}
