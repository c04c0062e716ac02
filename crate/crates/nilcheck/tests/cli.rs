//! End-to-end tests of the command-line surface: flags, output shapes and
//! exit codes.

use std::process::{Command, Output};

fn nilcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn nil_e7_json() {
    let out = nilcheck(&["nil", "--lie", "E7", "--prime", "23", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["class"], 3);
    assert_eq!(v["branch"], "§3.2.1");
    assert_eq!(v["regular"], true);
}

#[test]
fn nil_su8_text() {
    let out = nilcheck(&["nil", "--lie", "SU:8", "--prime", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("class:   3"));
    assert!(text.contains("witness:"));
}

#[test]
fn nil_exotic_2b() {
    let out = nilcheck(&[
        "nil", "--exotic", "2b:12", "--prime", "13", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["class"], 3);
}

#[test]
fn nil_raw_type_loop() {
    let out = nilcheck(&[
        "nil", "--type", "2,6,10", "--prime", "11", "--loop", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["class"], 3);
}

#[test]
fn bott_valuation() {
    let out = nilcheck(&["bott", "su", "8", "4", "--prime", "11"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "11");
}

#[test]
fn p1_json_shape() {
    let out = nilcheck(&["p1", "I2:5", "--prime", "11", "--generator", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["p"], 11);
    assert_eq!(v["vars"], serde_json::json!(["x2", "x5"]));
    // P^1 x2 = x2 x5^2 - 2 x2^6; graded-lex descending term order
    assert_eq!(
        v["terms"],
        serde_json::json!([{"e": [6, 0], "c": 9}, {"e": [1, 2], "c": 1}])
    );
}

#[test]
fn invariants_i2_json() {
    let out = nilcheck(&["invariants", "I2:5", "--prime", "11"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["order"], 10);
    assert_eq!(v["degrees"], serde_json::json!([2, 5]));
}

#[test]
fn verify_girard_passes_and_is_deterministic() {
    let a = nilcheck(&["verify", "girard", "--output", "json"]);
    let b = nilcheck(&["verify", "girard", "--output", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "output must be byte-identical");
}

#[test]
fn verify_list_has_citations() {
    let out = nilcheck(&["verify", "i2", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("i2.5-at-11.P1-x2"));
    assert!(text.contains("Eq. (I_2(n)-2)"));
}

#[test]
fn lemma21_heisenberg() {
    let out = nilcheck(&["lemma21", "heisenberg3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("group order: 27"));
    assert!(text.contains("class (signed generator tuples): 2"));
    assert!(text.contains("class (all element tuples):      2"));
}

#[test]
fn usage_errors_exit_two() {
    // unknown group label
    let out = nilcheck(&["nil", "--lie", "XX:3", "--prime", "11"]);
    assert_eq!(out.status.code(), Some(2));
    // composite prime
    let out = nilcheck(&["bott", "su", "8", "4", "--prime", "12"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed type list
    let out = nilcheck(&["nil", "--type", "2,x,10", "--prime", "11"]);
    assert_eq!(out.status.code(), Some(2));
    // missing subcommand arguments (clap)
    let out = nilcheck(&["nil", "--prime", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_nilcheck"))
        .env("NILCHECK_THREADS", "1")
        .args(["verify", "i2"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}
