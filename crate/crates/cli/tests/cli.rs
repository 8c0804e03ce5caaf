use std::path::PathBuf;
use std::process::{Command, Output};

use fragcheck::{parse_dfa, parse_formula, parse_regex};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fragcheck"));
    c.env_remove("FRAGCHECK_MAX_MONOID");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_bc_star() {
    let o = run(&["analyze", "--regex", "(bc)*", "--alphabet", "b,c", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sigma2_lt"], false);
    assert_eq!(v["pi2_lt"], true);
    assert_eq!(v["fo2_mod_new"], true);
    assert_eq!(v["witnesses"]["sigma2_lt"]["idempotent"], "bc");
}

#[test]
fn text_report_has_a_row_per_fragment() {
    let o = run(&["analyze", "--regex", "(a|b)*aa(a|b)*"]);
    let out = stdout(&o);
    assert!(out
        .lines()
        .any(|l| l.starts_with("sigma2_lt") && l.contains("yes")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("pi2_mod") && l.contains("no")));
}

#[test]
fn formula_evaluation() {
    let phi = file(
        "phi2.sexp",
        "(alphabet a b)\n(exists x (exists y (and (suc x y) (lab x a) (lab y a))))",
    );
    let o = run(&["fo", "eval", "--formula", &phi, "--word", "baab"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&["fo", "eval", "--formula", &phi, "--word", "abab"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = run(&["fo", "eval", "--formula", &phi, "--word", "abc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn formula_compilation_matches_regex() {
    let phi = file(
        "phi4.sexp",
        "(exists x (exists y (and (lab x a) (lab y b))))",
    );
    let o = run(&["fo", "compile", "--formula", &phi, "--alphabet", "a,b"]);
    assert_eq!(o.status.code(), Some(0));
    let d = parse_dfa(&stdout(&o)).unwrap();
    let want = parse_regex("(a|b)*(ab|ba)(a|b)*", None).unwrap();
    assert!(d.equivalent(&want).unwrap());
}

#[test]
fn check_exit_codes() {
    let even = ["check", "--fragment", "fo_mod", "--regex", "(aa|ab|ba|bb)*"];
    assert_eq!(run(&even).status.code(), Some(0));
    let even_a = ["check", "--fragment", "fo_mod", "--regex", "(b*ab*a)*b*"];
    assert_eq!(run(&even_a).status.code(), Some(1));
    let unknown = ["check", "--fragment", "sigma3", "--regex", "a*"];
    assert_eq!(run(&unknown).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    let bad = file(
        "incomplete.json",
        r#"{"alphabet":["a"],"states":["q0","q1"],"initial":"q0","finals":["q0"],"transitions":[["q0","a","q1"]]}"#,
    );
    let o = run(&["analyze", "--dfa", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("incomplete delta"));
    assert_eq!(run(&["analyze", "--regex", "(a"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
}

#[test]
fn monoid_cap_exits_3() {
    let o = bin()
        .args(["analyze", "--regex", "(a|b)*aa(a|b)*"])
        .env("FRAGCHECK_MAX_MONOID", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["analyze", "--regex", "(a|b)*aa(a|b)*", "--max-monoid", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dfa_input_with_reordered_alphabet() {
    let doc = file(
        "even_a.json",
        r#"{"alphabet":["a","b"],"states":["q0","q1"],"initial":"q0","finals":["q0"],"transitions":[["q0","a","q1"],["q1","a","q0"],["q0","b","q0"],["q1","b","q1"]]}"#,
    );
    let o = run(&[
        "check",
        "--fragment",
        "fo_mod",
        "--dfa",
        &doc,
        "--alphabet",
        "b,a",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "check",
        "--fragment",
        "fo_mod",
        "--dfa",
        &doc,
        "--alphabet",
        "a,c",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expression_commands() {
    let good = file("bc.expr", "(alphabet b c)\n(base ((b) (c)))");
    assert_eq!(
        run(&["expr", "check", "--expr", &good]).status.code(),
        Some(0)
    );
    let o = run(&["expr", "to-fo", "--expr", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert!(parse_formula(stdout(&o).trim()).is_ok());

    let bad = file(
        "even_prefix.expr",
        "(alphabet a b)\n(dprod 2 (base ((a b) (a b))) a (base ((a b))))",
    );
    let o = run(&["expr", "check", "--expr", &bad, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(
        run(&["expr", "to-fo", "--expr", &bad]).status.code(),
        Some(2)
    );
}

#[test]
fn witness_command() {
    let l1 = "((a|b)(a|b))*(aa|bb)(a|b)*";
    let o = run(&["witness", "--regex", l1, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["built"], true);
    assert_eq!(v["verified"], true);
    assert!(v["size"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());

    // The complement of L2 is not in Σ₂ even with modular predicates.
    let o = run(&["witness", "--regex", "(b|ab)*(()|a)", "--alphabet", "a,b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no witness"));
}

#[test]
fn xcheck_is_deterministic() {
    let args = [
        "xcheck",
        "--count",
        "15",
        "--triples",
        "12",
        "--seed",
        "9",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["instances"], 15);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}
