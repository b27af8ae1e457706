//! Golden tests for every subcommand: stdout, stderr and exit code.
//!
//! `golden/cases.txt` holds one case per line: `name|exit|arg|arg...`.
//! Expected output lives in `golden/<name>.out` and `golden/<name>.err`.

use std::path::Path;
use std::process::{Command, Output};

fn pathrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathrw"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

struct Case {
    name: String,
    exit: i32,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    std::fs::read_to_string(dir.join("cases.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| {
            let mut parts = l.split('|');
            Case {
                name: parts.next().unwrap().to_string(),
                exit: parts.next().unwrap().parse().unwrap(),
                args: parts.map(String::from).collect(),
            }
        })
        .collect()
}

fn golden(name: &str, ext: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{ext}"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_outputs() {
    let cases = cases();
    assert!(cases.len() >= 20);
    for c in &cases {
        let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
        let out = pathrw(&args);
        assert_eq!(out.status.code(), Some(c.exit), "exit code of {}", c.name);
        assert_eq!(String::from_utf8_lossy(&out.stdout), golden(&c.name, "out"), "stdout of {}", c.name);
        assert_eq!(String::from_utf8_lossy(&out.stderr), golden(&c.name, "err"), "stderr of {}", c.name);
    }
}

#[test]
fn every_subcommand_is_covered() {
    let cases = cases();
    for sub in ["normalize", "equal", "trace", "rpo-check", "critical-pairs", "pi1"] {
        assert!(cases.iter().any(|c| c.args[0] == sub), "{sub}");
    }
    for code in [0, 1, 2, 3] {
        assert!(cases.iter().any(|c| c.exit == code), "exit {code}");
    }
}

#[test]
fn deterministic() {
    for args in [
        &["normalize", "--strategy", "random", "--seed", "11", "--trace", "tau(tau(a,sigma(a)),tau(sigma(b),b))"][..],
        &["critical-pairs", "--format", "json"],
        &["pi1", "torus", "--trace", "sigma(tau(alpha,tau(beta,sigma(alpha))))"],
    ] {
        let a = pathrw(args);
        let b = pathrw(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn spec_examples() {
    let out = pathrw(&["normalize", "sigma(sigma(rho))"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "rho\n");
    let out = pathrw(&["equal", "tau(r,sigma(r))", "rho"]);
    assert_eq!((String::from_utf8_lossy(&out.stdout).as_ref(), out.status.code()), ("true\n", Some(0)));
    let out = pathrw(&["pi1", "circle", "tau(loop,tau(loop,sigma(loop)))"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().next(), Some("1"));
}

#[test]
fn syntax_error_names_position() {
    let out = pathrw(&["normalize", "tau(a,\n  b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:4"));
}
