use std::process::{Command, Output};

use serde_json::Value;

fn golomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_golomb")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn seq_ruler_seed_one() {
    let out = golomb(&["seq", "--kind", "ruler", "--seed", "1", "--from", "0", "--len", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[1,1,2,1,3]\n");
}

#[test]
fn seq_fermat_window() {
    let out = golomb(&["seq", "--kind", "fermat", "--from", "1", "--len", "8", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 0 1 -1 1 0 1 -2\n");
}

#[test]
fn bound_k1_is_six() {
    let out = golomb(&["bound", "--K", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["bound"], "6/1");
    assert!(v["decimal"].as_str().unwrap().starts_with("6.000"));
}

#[test]
fn verify_theorem_passes_to_64() {
    let out = golomb(&["verify-theorem", "--n-max", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["table"]["disagreements"], 0);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 64 * 12);
    let row = &v["table"]["rows"][0];
    for key in ["query", "expected", "direct", "agree"] {
        assert!(row.get(key).is_some(), "row lacks {key}");
    }
    assert_eq!(v["printed_table"]["confined_to_corrected_rows"], true);
}

#[test]
fn verify_theorem_is_independent_of_jobs() {
    let one = golomb(&["verify-theorem", "--n-max", "64", "--jobs", "1"]);
    let eight = golomb(&["verify-theorem", "--n-max", "64", "--jobs", "8"]);
    assert!(one.status.success() && eight.status.success());
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn identities_seeded_and_reproducible() {
    let a = golomb(&["identities", "--count", "40", "--seed", "11"]);
    let b = golomb(&["identities", "--count", "40", "--seed", "11", "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["block_3x3"]["nonzero"], 0);
    assert_eq!(v["desnanot"]["nonzero"], 0);
}

#[test]
fn pade_reports_defect_and_ratio() {
    let out = golomb(&["pade", "--epsilon", "-1", "--k", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], serde_json::json!(["0", "1"]));
    assert_eq!(v["q"], serde_json::json!(["1", "-2"]));
    assert_eq!(v["h_k"], v["hankel_ratio"]);
}

#[test]
fn approximate_big_numbers_are_strings() {
    let out = golomb(&["approximate", "--epsilon", "1", "--b", "2", "--k", "2", "--m", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["q"].is_string() && v["p"].is_string());
    assert!(v["q"].as_str().unwrap().len() > 20);
    assert_eq!(v["err"].as_array().unwrap().len(), 2);
    assert!(v["mu_eff"].as_str().unwrap().contains('/'));
}

#[test]
fn exponent_csv_has_one_row_per_record() {
    let csv =
        golomb(&["exponent", "--K", "1", "--b", "3", "--epsilon", "-1", "--m-max", "4", "--format", "csv"]);
    let js = golomb(&["exponent", "--K", "1", "--b", "3", "--epsilon", "-1", "--m-max", "4"]);
    assert!(csv.status.success() && js.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,m,q_digits,mu_eff"));
    assert_eq!(lines.count(), json(&js)["records"].as_array().unwrap().len());
}

#[test]
fn gap_ratio_attains_bound_for_k2() {
    let v = json(&golomb(&["gap", "--K", "2", "--n0", "0", "--count", "100"]));
    assert_eq!(v["max_ratio"], "5/3");
    assert_eq!(v["bound"], "5/3");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("golomb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.json");
    let out = golomb(&["bound", "--K", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["K"], 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(golomb(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(golomb(&["bound"]).status.code(), Some(2));
    assert_eq!(golomb(&["bound", "--K", "0"]).status.code(), Some(2));
    assert_eq!(golomb(&["seq", "--seed", "4"]).status.code(), Some(2));
    assert_eq!(golomb(&["pade", "--epsilon", "2", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn every_subcommand_help_has_an_example() {
    for cmd in
        ["seq", "hankel", "verify-theorem", "identities", "pade", "approximate", "exponent", "bound", "gap"]
    {
        let out = golomb(&[cmd, "--help"]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(&format!("Example:\n  golomb {cmd}")), "{cmd}");
    }
}
