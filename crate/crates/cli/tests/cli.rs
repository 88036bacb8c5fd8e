//! End-to-end checks of the command-line interface: exit codes, output
//! determinism and the documented formats.

use std::path::Path;
use std::process::{Command, Output};

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn codim_matches_closed_form() {
    let out = omega(&[
        "codim",
        "--builtin",
        "kc2-hopf",
        "-m",
        "3",
        "-n",
        "2",
        "-K",
        "6",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("codim(3,2) = 22"), "{}", stdout(&out));
}

#[test]
fn codim_vector_space_with_dim_flag() {
    let out = omega(&[
        "codim",
        "--builtin",
        "vector-space",
        "--dim",
        "2",
        "-m",
        "4",
        "-n",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("codim(4,4) = 14"));

    let out = omega(&[
        "codim",
        "--builtin",
        "yd-kc2-sigma",
        "-m",
        "2",
        "-n",
        "3",
        "-K",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("codim(2,3) = 0"));
}

#[test]
fn validate_hopf_axioms_passes() {
    let out = omega(&["validate", "--builtin", "kc2-hopf", "--relations", "v-hopf"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: pass"));

    let out = omega(&[
        "validate",
        "--builtin",
        "yd-kc2-braided",
        "--relations",
        "v3(2)",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn validate_reports_failures_with_witness() {
    // The 6-dim group algebra is not commutative.
    let out = omega(&[
        "validate",
        "--builtin",
        "group-hopf:s3",
        "--relations",
        "v-commcochopf",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("commutativity: FAIL on input"), "{text}");
}

#[test]
fn validate_broken_braiding_exits_one_with_residual() {
    let out = omega(&["validate", "--algebra", &data("bad-braiding.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("yang-baxter=false"), "{text}");
    assert!(text.contains("residual"), "{text}");
}

#[test]
fn check_identity_exit_codes() {
    let out = omega(&["check", "--builtin", "kc2-hopf", "mu . Delta - u . eps"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("identity: true"));

    let out = omega(&["check", "--builtin", "kc2-hopf", "mu - mu . tau(1,1)"]);
    assert!(out.status.success());

    let out = omega(&["check", "--builtin", "group-hopf:s3", "mu - mu . tau(1,1)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("identity: false"));
}

#[test]
fn eval_json_output_parses() {
    let out = omega(&[
        "eval",
        "--builtin",
        "kc2-hopf",
        "mu . (S # id(1)) . Delta",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dom"], 1);
    assert_eq!(v["cod"], 1);
    assert_eq!(v["entries"][0][0], "1");
    assert_eq!(v["entries"][1][0], "0");
}

#[test]
fn table_outputs_are_deterministic() {
    let args = [
        "table",
        "--builtin",
        "yd-kc2-braided",
        "--max-m",
        "3",
        "--max-n",
        "3",
        "-K",
        "4",
        "--format",
        "csv",
    ];
    let first = omega(&args);
    let second = omega(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("2,2,3,true"), "{text}");
    assert!(text.contains("3,3,10,true"), "{text}");
}

#[test]
fn table_and_validate_json_parse() {
    let out = omega(&[
        "table",
        "--builtin",
        "vector-space",
        "--dim",
        "2",
        "--max-m",
        "2",
        "--max-n",
        "2",
        "-K",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["grid"][2][2]["value"], 2);
    assert_eq!(v["grid"][2][2]["stable"], true);

    let out = omega(&[
        "validate",
        "--builtin",
        "kc2-hopf",
        "--relations",
        "v-hopf",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["relations"].as_array().unwrap().len(), 13);
}

#[test]
fn identities_finds_commutativity_kernel() {
    let out = omega(&[
        "identities",
        "--builtin",
        "kc2-hopf",
        "--term",
        "mu",
        "--term",
        "mu . tau(1,1)",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("kernel dimension: 1"));
}

#[test]
fn normal_form_round_trips() {
    let out = omega(&["normal-form", "phi", "x1*x2*x1^-1,x5*x2^-1*x1^2", "-m", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("round-trip: pass"));

    let out = omega(&["normal-form", "psi", "x1^-2*x2^3,x1^2*x2^-1*x5", "-m", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("round-trip: pass"));

    let out = omega(&["normal-form", "phi", "x1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("term: id(1)"));
}

#[test]
fn algebra_file_loading() {
    let out = omega(&[
        "eval",
        "--algebra",
        &data("dual-numbers.json"),
        "mul . (one # id(1))",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dom = 1, cod = 1"), "{text}");

    // The nilpotent part squares to zero.
    let out = omega(&[
        "check",
        "--algebra",
        &data("dual-numbers.json"),
        "mul - mul . tau(1,1)",
    ]);
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_two() {
    let out = omega(&[
        "codim",
        "--builtin",
        "no-such-algebra",
        "-m",
        "1",
        "-n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = omega(&["eval", "--builtin", "kc2-hopf", "mu . ("]);
    assert_eq!(out.status.code(), Some(2));

    let out = omega(&["eval", "--builtin", "kc2-hopf", "frob"]);
    assert_eq!(out.status.code(), Some(2));

    let out = omega(&["check", "--builtin", "kc2-hopf", "--field", "gfp:10", "mu"]);
    assert_eq!(out.status.code(), Some(2));

    let out = omega(&["codim", "-m", "1", "-n", "1"]);
    assert_eq!(out.status.code(), Some(2), "needs an algebra source");

    let out = omega(&["eval", "--algebra", "/no/such/file.json", "id(1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn builtin_list_names_everything() {
    let out = omega(&["builtin", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in omega_core_builtins() {
        assert!(text.contains(name), "missing {name}");
    }
}

fn omega_core_builtins() -> [&'static str; 5] {
    [
        "kc2-hopf",
        "group-hopf",
        "vector-space",
        "yd-kc2-sigma",
        "yd-kc2-braided",
    ]
}

#[test]
fn prime_field_mode_matches_rational_ranks() {
    let rational = omega(&[
        "codim",
        "--builtin",
        "kc2-hopf",
        "-m",
        "2",
        "-n",
        "2",
        "-K",
        "5",
    ]);
    let modular = omega(&[
        "codim",
        "--builtin",
        "kc2-hopf",
        "--field",
        "gfp:1000003",
        "-m",
        "2",
        "-n",
        "2",
        "-K",
        "5",
    ]);
    assert!(rational.status.success() && modular.status.success());
    assert!(stdout(&rational).contains("= 10"));
    assert!(stdout(&modular).contains("= 10"));
}
