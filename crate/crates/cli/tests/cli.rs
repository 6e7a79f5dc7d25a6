use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn ratrecon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratrecon")).args(args).env_remove("RATRECON_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn hankel_verdicts() {
    let out = ratrecon(&["hankel", "--series", &data("fibonacci.json"), "--lmax", "4", "--mmax", "4"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["result"]["verdict"], "RationalWitness");
    assert_eq!(doc["result"]["series_form"]["denominator"], "-x1^2 - x1 + 1");
    assert_eq!(doc["manifest"]["command"], "hankel");
    assert_eq!(doc["manifest"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let out = ratrecon(&["hankel", "--series", &data("squares_exponent.json"), "--lmax", "4", "--mmax", "4"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["result"]["verdict"], "NoWitnessUpTo");
}

#[test]
fn interp_value_and_fit() {
    let out = ratrecon(&["interp", "--samples", &data("inv_x.csv"), "--n", "0", "--m", "1", "--at", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["value"], "1/3");

    let out = ratrecon(&["interp", "--samples", &data("inv_x.csv"), "--n", "0", "--m", "1", "--at", "-1/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["value"], "-2");

    let out = ratrecon(&["interp", "--samples", &data("x2_plus_1.csv"), "--n", "2", "--m", "0", "--fit"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["function"], "(x1^2 + 1)/(1)");
}

#[test]
fn interp_at_a_pole_is_beta_zero() {
    let out = ratrecon(&["interp", "--samples", &data("inv_x.csv"), "--n", "0", "--m", "1", "--at", "0"]);
    assert_eq!(code(&out), 4);
    assert_eq!(json(&out)["error"]["kind"], "beta_zero");
}

#[test]
fn fit_with_too_small_degrees_is_no_fit() {
    let out = ratrecon(&["interp", "--samples", &data("x2_plus_1.csv"), "--n", "1", "--m", "0", "--fit"]);
    assert_eq!(code(&out), 5);
    assert_eq!(json(&out)["error"]["kind"], "no_fit");
}

#[test]
fn input_and_usage_errors() {
    let out = ratrecon(&["hankel", "--series", "/nonexistent/series.json", "--lmax", "1", "--mmax", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["error"]["kind"], "input");

    let out = ratrecon(&["reconstruct", "--expr", "x1 + * x2", "--arity", "2"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("at byte 5"));

    let out = ratrecon(&["reconstruct", "--expr", "x3", "--arity", "2"]);
    assert_eq!(code(&out), 1);

    let out = ratrecon(&["reconstruct", "--arity", "2"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let out = ratrecon(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reconstruct_output_is_reproducible() {
    let args = ["reconstruct", "--expr", "(x1*x2 + 1)/(x1 - x2)", "--arity", "2", "--seed", "5"];
    let a = ratrecon(&args);
    let b = ratrecon(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["manifest"]["seed"], 5);
    assert_eq!(doc["manifest"]["field"], "fp:1000003");
    let v = &doc["result"]["verification"];
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["agreements"].as_u64().unwrap() + v["undefined_skips"].as_u64().unwrap(), 100);

    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    assert_eq!(ratrecon(&threaded).stdout, a.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ratrecon"));
        cmd.args(["reconstruct", "--expr", "x1^2 + x2", "--arity", "2", "--field", "q"]).args(extra);
        match env {
            Some(s) => cmd.env("RATRECON_SEED", s),
            None => cmd.env_remove("RATRECON_SEED"),
        };
        json(&cmd.output().unwrap())
    };
    assert_eq!(run(None, &[])["manifest"]["seed"], 0);
    assert_eq!(run(Some("31"), &[])["manifest"]["seed"], 31);
    assert_eq!(run(Some("31"), &["--seed", "2"])["manifest"]["seed"], 2);
    assert_eq!(run(Some("31"), &[])["result"]["result"], "(x1^2 + x2)/(1)");
}

#[test]
fn record_then_replay() {
    let table = scratch("record_then_replay.csv");
    let table = table.to_str().unwrap();
    let live = ratrecon(&["reconstruct", "--expr", "1/x1 + x2", "--arity", "2", "--record", table]);
    assert_eq!(code(&live), 0);
    let replay = ratrecon(&["reconstruct", "--oracle-replay", table, "--arity", "2"]);
    assert_eq!(code(&replay), 0);
    assert_eq!(json(&live)["result"], json(&replay)["result"]);

    let wrong_arity = ratrecon(&["reconstruct", "--oracle-replay", table, "--arity", "3"]);
    assert_eq!(code(&wrong_arity), 1);
}

#[test]
fn edited_replay_fails_verification() {
    let without = scratch("edited_without_verify.csv");
    let with = scratch("edited_with_verify.csv");
    let base = ["reconstruct", "--expr", "x1 - 3*x2", "--arity", "2", "--seed", "8"];
    let mut args = base.to_vec();
    args.extend(["--verify-trials", "0", "--record", without.to_str().unwrap()]);
    assert_eq!(code(&ratrecon(&args)), 0);
    let mut args = base.to_vec();
    args.extend(["--record", with.to_str().unwrap()]);
    assert_eq!(code(&ratrecon(&args)), 0);

    // change the answers that only verification asked for
    let known = fs::read_to_string(&without).unwrap();
    let known: Vec<&str> = known.lines().collect();
    let edited: Vec<String> = fs::read_to_string(&with)
        .unwrap()
        .lines()
        .map(|l| {
            if known.contains(&l) {
                l.to_string()
            } else {
                let (point, _) = l.rsplit_once(',').unwrap();
                format!("{point},12345")
            }
        })
        .collect();
    let edited_path = scratch("edited_table.csv");
    fs::write(&edited_path, edited.join("\n")).unwrap();
    let out = ratrecon(&["reconstruct", "--oracle-replay", edited_path.to_str().unwrap(), "--arity", "2", "--seed", "8"]);
    assert_eq!(code(&out), 6);
    assert_eq!(json(&out)["error"]["kind"], "verification_failed");
}

#[test]
fn counterexample_table_and_certificate() {
    let csv = scratch("counterexample.csv");
    let out = ratrecon(&["counterexample", "--n", "6", "--dmax", "2", "--grid", "8", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["result"]["table"]["symmetric"], true);
    assert_eq!(doc["result"]["certificate"]["all_refuted"], true);
    let degrees: Vec<u64> = doc["result"]["slice_degrees"].as_array().unwrap().iter().map(|d| d["degree"].as_u64().unwrap_or(0)).collect();
    assert_eq!(degrees, vec![0, 1, 2, 3, 4, 5]);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("n,m,a_n,a_m,f"));
    assert_eq!(text.lines().count(), 1 + 36);
}
