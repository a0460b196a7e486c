use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_semigroup-moments"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let run = cli(&all);
    assert_eq!(run.code, 0, "{}", run.stderr);
    serde_json::from_str(&run.stdout).expect("valid JSON")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().expect("exact values are strings").to_string())
        .collect()
}

fn polys(v: &Value) -> Vec<Vec<String>> {
    v.as_array().unwrap().iter().map(strs).collect()
}

#[test]
fn graph_counts_and_primes() {
    let v = json(&["counts", "--semigroup", "graphs", "--max-n", "5"]);
    assert_eq!(strs(&v["counts"]), ["1", "1", "2", "4", "11", "34"]);
    assert_eq!(strs(&v["primes"])[1..], ["1", "1", "2", "6", "21"]);
    let v = json(&["primes", "--semigroup", "graphs", "--max-n", "5"]);
    assert_eq!(strs(&v["primes"]), ["0", "1", "1", "2", "6", "21"]);
}

#[test]
fn trivial_range() {
    let v = json(&["counts", "--semigroup", "graphs", "--max-n", "0"]);
    assert_eq!(strs(&v["counts"]), ["1"]);
}

#[test]
fn polynomial_counts() {
    let v = json(&["counts", "--semigroup", "fq-poly", "--q", "2", "--k", "2", "--max-n", "3"]);
    assert_eq!(strs(&v["counts"]), ["1", "6", "56", "960"]);
    assert_eq!(v["params"]["q"], "2");
}

#[test]
fn big_counts_stay_exact() {
    let v = json(&["counts", "--semigroup", "graphs", "--max-n", "20"]);
    assert_eq!(strs(&v["counts"])[20], "645490122795799841856164638490742749440");
}

#[test]
fn graph_tau_list() {
    let v = json(&["expansion", "--semigroup", "graphs", "--function", "d2", "--M", "1", "--R", "5"]);
    let tau = polys(&v["tau"]);
    assert_eq!(tau[1], ["0", "2"]);
    assert_eq!(tau[2], ["0", "0", "-4", "4"]);
    assert_eq!(tau[3], ["0", "1024", "-2016", "1320", "-368", "40"]);
    assert_eq!(tau[4], ["0", "743424", "-1839360", "5136512/3", "-781712", "560528/3", "-22448", "3248/3"]);
    assert_eq!(strs(&v["xi"]), ["0", "1", "2", "4", "11"]);
    assert_eq!(v["base"], "2");
}

#[test]
fn even_graph_tau_list() {
    let v = json(&["expansion", "--semigroup", "even-graphs", "--function", "dstar", "--M", "2", "--R", "5"]);
    let tau = polys(&v["tau"]);
    assert_eq!(tau[1], ["0", "2"]);
    assert_eq!(tau[2], ["0", "16", "-20", "4"]);
    assert_eq!(tau[3], ["0", "1408", "-2816", "1832", "-464", "40"]);
    assert_eq!(strs(&v["xi"]), ["0", "1", "0", "1", "11"]);
}

#[test]
fn expansion_rejects_fast_growth() {
    let run = cli(&["expansion", "--semigroup", "fq-poly", "--q", "2", "--k", "3"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("a = 2"), "{}", run.stderr);
    assert!(run.stdout.is_empty());
}

#[test]
fn verify_expansion_passes() {
    let run = cli(&["verify", "--semigroup", "graphs", "--function", "d2", "--M", "1", "--R", "3", "--n", "10..20"]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    assert!(run.stdout.ends_with("PASS\n"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["lemma2", "lemma3", "axiom", "golden"] {
        let run = cli(&["verify", "--semigroup", "graphs", "--suite", suite, "--max-n", "12"]);
        assert_eq!(run.code, 0, "{suite}: {}{}", run.stdout, run.stderr);
    }
}

#[test]
fn verify_failure_exits_one() {
    // One-variable polynomials have G_(n-1)/G_n = 1/q, which does not tend to 0.
    let run = cli(&["verify", "--suite", "axiom", "--semigroup", "fq-poly", "--q", "2", "--k", "1"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("first failure: G_(n-1)/G_n"), "{}", run.stderr);
}

#[test]
fn golden_file_mismatch_is_reported() {
    let dir = std::env::temp_dir().join(format!("sgm-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"semigroup": "graphs", "sequences": {"counts": ["1", "1", "2", "5"]}}"#).unwrap();
    let run = cli(&["verify", "--suite", "golden", "--golden", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("expected 1, 1, 2, 5, got 1, 1, 2, 4"), "{}", run.stderr);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--n", "20..10"][..],
        &["verify", "--n", "ten..20"],
        &["counts", "--semigroup", "trees"],
        &["counts", "--semigroup", "fq-poly", "--q", "6", "--k", "2"],
        &["moment", "--function", "sigma"],
        &["moment", "--M", "0"],
        &["lambda", "--s", "0"],
    ] {
        let run = cli(args);
        assert_eq!(run.code, 2, "{args:?}");
        assert!(!run.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--semigroup", "graphs", "--M", "2", "--R", "2", "--n", "8..16", "--format", "json"];
    let serial = cli(&args);
    let mut par_args = args.to_vec();
    par_args.push("--parallel");
    let parallel = cli(&par_args);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.stdout, cli(&args).stdout);
}

#[test]
fn moments_lambda_and_beta() {
    let v = json(&["moment", "--function", "d2", "--max-n", "2"]);
    assert_eq!(strs(&v["moments"]), ["-1/2", "0", "1/4"]);
    let v = json(&["lambda", "--n", "4..4"]);
    assert_eq!(v["lambda"][0]["value"], "64/11");
    let v = json(&["beta", "--max-n", "4"]);
    assert_eq!(strs(&v["beta"]), ["1", "-1", "-1", "-1", "-4"]);
}

#[test]
fn csv_and_plain_formats() {
    let run = cli(&["counts", "--max-n", "2", "--format", "csv"]);
    assert_eq!(run.stdout, "n,G_n,G+_n\n0,1,0\n1,1,1\n2,2,1\n");
    let run = cli(&["expansion", "--R", "3"]);
    assert!(run.stdout.contains("tau_2(n) = 4*n^3 - 4*n^2\n"), "{}", run.stdout);
}
