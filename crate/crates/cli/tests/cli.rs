//! End-to-end behaviour of the `galois` binary and the parser.

use std::process::Command;

use galois_cli::parse_polynomial;
use galois_core::arith::QPoly;
use proptest::prelude::*;
use serde_json::Value;

fn galois(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galois"));
    cmd.args(args).env_remove("GALOIS_PRECISION_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(galois(&["analyze", "x^3 - 2"], &[]).0, 0);
    let (code, _, err) = galois(&["analyze", "x^2 + + 1"], &[]);
    assert_eq!(code, 1);
    assert!(err.contains("column 7"), "{err}");
    assert_eq!(galois(&["analyze", "x^2 - 1.5"], &[]).0, 1);
    assert_eq!(galois(&["analyze", "7"], &[]).0, 1);
    assert_eq!(galois(&["analyze", "x^3 - 2", "--max-degree", "4"], &[]).0, 1);
    assert_eq!(galois(&["analyze", "x^9 - 2"], &[]).0, 1);
    assert_eq!(galois(&["analyze", "x^2 - 2", "--precision-cap", "16"], &[]).0, 1);
    let (code, _, err) = galois(
        &["analyze", "x^3 - 1000001*x + 1", "--precision-start", "32", "--precision-cap", "32"],
        &[],
    );
    assert_eq!(code, 3);
    assert!(err.contains("undecided"), "{err}");
    assert_eq!(galois(&["verify-lemmas", "--pmax", "5000"], &[]).0, 1);
    assert_eq!(galois(&["frobnicate"], &[]).0, 1);
    assert_eq!(galois(&["analyze", "x^2 - 2", "--format", "yaml"], &[]).0, 1);
    assert_eq!(galois(&["--help"], &[]).0, 0);
}

#[test]
fn precision_cap_from_environment() {
    assert_eq!(galois(&["analyze", "x^2 - 2"], &[("GALOIS_PRECISION_CAP", "16")]).0, 1);
    assert_eq!(galois(&["analyze", "x^2 - 2"], &[("GALOIS_PRECISION_CAP", "256")]).0, 0);
    // the flag wins over the environment
    let flagged = galois(&["analyze", "x^2 - 2", "--precision-cap", "256"], &[("GALOIS_PRECISION_CAP", "16")]);
    assert_eq!(flagged.0, 0);
}

#[test]
fn repeated_roots_are_reduced() {
    let (code, out, _) = galois(&["analyze", "(x^2 - 2)^2 * (x + 1)", "--format", "json"], &[]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"]["squarefree_part"], "x^3 + x^2 - 2*x - 2");
    assert_eq!(v["field"]["degree"], 2);

    let (code, out, _) = galois(&["analyze", "x^2 - 4", "--format", "json"], &[]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"]["degree"], 1);
    assert_eq!(v["group"]["order"], 1);
}

#[test]
fn json_schema() {
    let (_, out, _) = galois(&["analyze", "x^4 + 1", "--format", "json"], &[]);
    let v: Value = serde_json::from_str(&out).unwrap();
    for verdict in v["verdicts"].as_array().unwrap() {
        for key in ["part", "pass", "witnesses"] {
            assert!(verdict.get(key).is_some(), "verdict lacks {key}");
        }
    }
    assert!(v["timing"].get("wall_ms").is_none());
    let (_, out, _) = galois(&["analyze", "x^4 + 1", "--format", "json", "--wall-clock"], &[]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["timing"]["wall_ms"].is_u64());
    // rationals are strings
    assert!(v["field"]["roots"][0][0].is_string());
}

#[test]
fn dot_has_a_node_per_subgroup_and_hasse_edges() {
    let (code, dot, _) = galois(&["analyze", "x^3 - 2", "--format", "dot"], &[]);
    assert_eq!(code, 0);
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    // S3: 6 subgroups; covering relations 1 < order 2 (3), 1 < order 3, all
    // four maximal subgroups < S3
    assert_eq!(nodes, 6);
    assert_eq!(edges, 8);
    assert!(dot.contains("[E:Q] = 2"));
}

#[test]
fn sequential_flag_gives_the_same_report() {
    let a = galois(&["analyze", "x^4 - 10*x^2 + 1", "--format", "json"], &[]).1;
    let b = galois(&["analyze", "x^4 - 10*x^2 + 1", "--format", "json", "--sequential"], &[]).1;
    assert_eq!(a, b);
}

#[test]
fn empty_lemma_sweep() {
    let (code, out, _) = galois(&["verify-lemmas", "--pmax", "1", "--qmax", "1", "--format", "json"], &[]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fields"].as_array().unwrap().len(), 0);
    assert_eq!(v["pass"], true);
}

proptest! {
    #[test]
    fn display_round_trips(c in prop::collection::vec(-50i64..=50, 1..7)) {
        let f = QPoly::from_ints(&c);
        prop_assume!(!f.is_zero());
        let printed = f.to_string();
        prop_assert_eq!(parse_polynomial(&printed).unwrap(), f);
    }

    #[test]
    fn whitespace_is_ignored(c in prop::collection::vec(-9i64..=9, 2..5)) {
        let f = QPoly::from_ints(&c);
        prop_assume!(!f.is_zero());
        let spaced: String = f.to_string().chars().flat_map(|ch| [ch, ' ']).collect();
        prop_assert_eq!(parse_polynomial(&spaced).unwrap(), f);
    }
}
