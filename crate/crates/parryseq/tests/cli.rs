//! End-to-end checks of the command-line interface: documented outputs,
//! deterministic bytes, and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parryseq"))
        .args(args)
        .env_remove("PARRYSEQ_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_representation_queries() {
    assert_eq!(stdout(&["rep", "--system", "eq-4.1", "16"]), "101\n");
    assert_eq!(stdout(&["rep", "--system", "fibonacci", "0"]), "eps\n");
    assert_eq!(stdout(&["val", "--system", "modified-fibonacci", "20"]), "6\n");
    assert_eq!(stdout(&["rep", "--system", "modified-fibonacci", "6"]), "102\n");
}

#[test]
fn beta_subcommand_formats_cycles() {
    fn with<'a>(extra: &[&'a str]) -> Vec<&'a str> {
        let mut v = vec!["beta", "--builtin", "eq-4.1"];
        v.extend_from_slice(extra);
        v
    }
    assert_eq!(stdout(&with(&["--x", "1", "--digits", "8"])), "3203(0)\n");
    assert_eq!(stdout(&with(&["--x", "1/3", "--digits", "12"])), "10(2212)\n");
    assert_eq!(
        stdout(&with(&["--x", "1/2", "--digits", "21"])),
        "123102303001010220123\n"
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["reproduce", "no-such-name"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "--system", "no-such-system", "5"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reproduce_single_experiment_is_deterministic() {
    let a = stdout(&["reproduce", "table1"]);
    let b = stdout(&["reproduce", "table1"]);
    assert_eq!(a, b);
    assert!(a.contains("result: PASS"), "{a}");
}

#[test]
fn list_builtins_names_every_system() {
    let out = stdout(&["list-builtins"]);
    for name in ["fibonacci", "modified-fibonacci", "base-<k>", "example-2.3", "eq-4.1"] {
        assert!(out.contains(name), "missing {name} in {out}");
    }
}
