use std::io::Write;
use std::process::{Command, Stdio};

use semifiber_cli::manifest::Pos;
use semifiber_cli::{CliError, TaskError};

/// Runs `semifiber run -` on `manifest`, returning the exit code and stderr.
fn run(manifest: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_semifiber"))
        .args(["run", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(manifest.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const NODE: &str = "field GF(32003);\nalgebra R { vars x(1), y(1); rels x*y; }\n";

fn input_error(manifest: &str, needle: &str) {
    let (code, stdout, stderr) = run(manifest);
    assert_eq!(code, 1, "{manifest}\nstderr: {stderr}");
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("error: ") && stderr.contains(needle), "expected `{needle}` in {stderr}");
}

#[test]
fn malformed_manifests_exit_with_one() {
    input_error("field GF(32003)\nalgebra R { vars x; }", "2:1: syntax error");
    input_error(&format!("{NODE}task betti {{ colour = red; }}"), "unknown key `colour`");
    input_error(&format!("{NODE}task frobnicate {{ }}"), "unknown procedure `frobnicate`");
    input_error(&format!("{NODE}task betti {{ algebra = S; }}"), "S");
    input_error("field QQ;\nalgebra R { vars x(1); rels x - 1; }\n", "constant term");
    input_error("field QQ;\nalgebra R { vars x(1), y(1); rels x - y^2; }\n", "not homogeneous");
    input_error("field QQ;\nalgebra R { vars x(0); }\n", "weight");
    input_error("field GF(13);\nalgebra R { vars x(1); }\n", "13");
    input_error("field GF(15);\nalgebra R { vars x(1); }\n", "15");
    input_error("field QQ;\nalgebra R { vars x(1); }\ntask socle { ideal = x^2; }\n", "socle");
}

#[test]
fn a_missing_file_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_semifiber")).args(["run", "/nonexistent/m.sf"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn negative_verdicts_are_results_not_errors() {
    let (code, stdout, _) = run("field QQ;\nalgebra R { vars x(1); }\ntask thm_test { ideal = x^2; }\n");
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: Refuted"), "{stdout}");
    let (code, stdout, _) = run(&format!("{NODE}task section {{ ideal = x - y; bound = 4; }}\n"));
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: NoneExists"), "{stdout}");
}

#[test]
fn json_output_is_the_report_document() {
    let out = Command::new(env!("CARGO_BIN_EXE_semifiber"))
        .args(["run", "--json", concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/node.sf")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "semifiber-report/1");
    assert_eq!(v["tasks"][0]["procedure"], "betti");
}

#[test]
fn internal_failures_map_to_two() {
    let internal: CliError = TaskError::Internal { pos: Pos::default(), message: "replay failed".into() }.into();
    assert_eq!(internal.exit_code(), 2);
    let input: CliError = TaskError::Input { pos: Pos::default(), message: "bad".into() }.into();
    assert_eq!(input.exit_code(), 1);
}

#[test]
fn check_and_fmt_accept_the_corpus() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/constructions.sf");
    let out = Command::new(env!("CARGO_BIN_EXE_semifiber")).args(["check", path]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok: 4 algebras, 2 actions, 8 tasks"));
    let out = Command::new(env!("CARGO_BIN_EXE_semifiber")).args(["fmt", path]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
