//! End-to-end tests of the polyint binary: flag handling, exit codes,
//! output formats, and the canonical-JSON round-trip guarantee.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyint"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("polyint-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("write temp grid");
    path
}

/// Re-serializes a parsed report line under the canonical rules: key order
/// preserved, sign as string, p/t as integers, pass as bool, all other
/// values as 17-significant-digit floats.
fn reserialize(line: &str) -> String {
    let value: serde_json::Value = serde_json::from_str(line).expect("valid json");
    let object = value.as_object().expect("flat object");
    let mut out = String::from("{");
    for (i, (key, val)) in object.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('"');
        out.push_str(key);
        out.push_str("\":");
        match key.as_str() {
            "sign" => {
                out.push('"');
                out.push_str(val.as_str().expect("sign is a string"));
                out.push('"');
            }
            "p" | "t" => out.push_str(&val.as_u64().expect("integer field").to_string()),
            "pass" => out.push_str(if val.as_bool().expect("bool field") {
                "true"
            } else {
                "false"
            }),
            _ => out.push_str(&format!("{:.16e}", val.as_f64().expect("float field"))),
        }
    }
    out.push('}');
    out
}

#[test]
fn eval_rejects_invalid_parameter_region() {
    let out = run(&["eval", "--sign", "minus", "--a", "1", "--b", "-1", "--p", "0", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["eval", "--sign", "minus", "--a", "1", "--b", "1", "--p", "0", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_reports_known_value() {
    let out = run(&[
        "eval", "--sign", "minus", "--a", "1", "--b", "1", "--p", "0", "--t", "2", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    // -2 zeta(3)
    let total_re = v["total_re"].as_f64().unwrap();
    assert!((total_re - (-2.4041138063191885)).abs() < 1e-9);
    assert_eq!(v["total_im"].as_f64().unwrap(), 0.0);
    assert_eq!(v["sign"].as_str().unwrap(), "minus");

    let out = run(&[
        "eval", "--sign", "plus", "--a", "2", "--b", "1", "--p", "2", "--t", "4", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // -(31/189) pi^7
    let total_im = v["total_im"].as_f64().unwrap();
    assert!((total_im - (-495.3920109051881)).abs() < 1e-6 * 495.0);
}

#[test]
fn eval_csv_has_header_and_row() {
    let out = run(&[
        "eval", "--sign", "plus", "--a", "1", "--b", "1", "--p", "1", "--t", "2", "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sign,a,b,p,t,q,A,B,C,total_re,total_im,tol"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("plus,"));
    assert_eq!(row.split(',').count(), 12);
}

#[test]
fn json_lines_round_trip_byte_identical() {
    let out = run(&[
        "eval", "--sign", "plus", "--a", "1", "--b", "1", "--p", "2", "--t", "3", "--format",
        "json",
    ]);
    let line = stdout(&out);
    let line = line.trim_end();
    assert_eq!(reserialize(line), line);

    let grid = tmp_file("roundtrip.csv", "sign,a,b,p,t\nminus,6,1,1,1\nplus,2,1,2,4\n");
    let out = run(&["verify", "--grid", grid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        assert_eq!(reserialize(line), line, "round-trip mismatch: {line}");
    }
}

#[test]
fn verify_single_point_passes() {
    let grid = tmp_file("catalan.csv", "sign,a,b,p,t\nminus,6,1,1,1\n");
    let out = run(&["verify", "--grid", grid.to_str().unwrap(), "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["pass"].as_bool(), Some(true));
    assert!((v["total_re"].as_f64().unwrap() - (-10.814245149925146)).abs() < 1e-9);
    assert_eq!(v["total_im"].as_f64().unwrap(), 0.0);
    assert_eq!(v["oracle_im"].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_rejects_malformed_grids() {
    let bad_header = tmp_file("badheader.csv", "a,b,p,t\n1,1,0,2\n");
    let out = run(&["verify", "--grid", bad_header.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad_row = tmp_file("badrow.csv", "sign,a,b,p,t\nminus,1,1,0\n");
    let out = run(&["verify", "--grid", bad_row.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad_domain = tmp_file("baddomain.csv", "sign,a,b,p,t\nminus,1,-1,0,2\n");
    let out = run(&["verify", "--grid", bad_domain.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--grid", "/nonexistent/grid.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_csv_stream_has_header() {
    let grid = tmp_file("csvstream.csv", "sign,a,b,p,t\nminus,1,1,0,2\n");
    let out = run(&["verify", "--grid", grid.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sign,a,b,p,t,q,A,B,C,total_re,total_im,oracle_re,oracle_im,abs_diff,rel_diff,tol,pass,runtime_ms"
    );
    assert_eq!(lines.next().unwrap().split(',').count(), 18);
}

#[test]
fn verify_jobs_do_not_change_output() {
    let grid = tmp_file(
        "jobs.csv",
        "sign,a,b,p,t\n\
         minus,1,1,0,2\nplus,1,1,0,2\nminus,2,1,1,3\nplus,2,1,1,3\n\
         minus,-1,-1,2,2\nplus,0.5,1,3,4\nminus,6,2,1,1\nplus,3,1,0,1\n",
    );
    let strip_runtime = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.split("\"runtime_ms\":").next().unwrap().to_string())
            .collect()
    };
    let one = run(&["verify", "--grid", grid.to_str().unwrap(), "--jobs", "1"]);
    let three = run(&["verify", "--grid", grid.to_str().unwrap(), "--jobs", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(three.status.code(), Some(0));
    assert_eq!(strip_runtime(&stdout(&one)), strip_runtime(&stdout(&three)));
}

#[test]
fn sum_reports_known_closed_form() {
    let out = run(&["sum", "--kind", "alt", "--p", "1", "--t", "2", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // 3 zeta(3)/8
    let value_line = text.lines().find(|l| l.starts_with("value")).unwrap();
    let value: f64 = value_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!((value - 0.45077133868484787).abs() < 1e-10);
    assert!(text.contains("closed form ["));

    let out = run(&["sum", "--kind", "plain", "--p", "3", "--t", "4", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("converged = true"));
}

#[test]
fn sum_rejects_divergent_spec() {
    let out = run(&["sum", "--kind", "plain", "--p", "1", "--t", "1", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["sum", "--kind", "plain", "--p", "0", "--t", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn term_cap_env_var_limits_series() {
    let grid = tmp_file("cap.csv", "sign,a,b,p,t\nplus,1,1,1,3\n");
    let out = bin()
        .args(["verify", "--grid", grid.to_str().unwrap()])
        .env("POLYINT_MAX_TERMS", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));

    let out = bin()
        .args(["sum", "--kind", "plain", "--p", "3", "--t", "4", "--r", "1"])
        .env("POLYINT_MAX_TERMS", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["eval", "--sign", "sideways", "--a", "1", "--b", "1", "--p", "0", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--grid", "default", "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
