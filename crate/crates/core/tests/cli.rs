use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn estfuse(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_estfuse"))
        .args(args)
        .env_remove("FUSE_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn estfuse");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON object")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn combine_two_sources() {
    let out = estfuse(&["combine", "-", "--method", "virtual-sampling"], "0,1\n1,2\n");
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert!((v["value"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!((v["uncertainty"].as_f64().unwrap() - (0.928f64).sqrt()).abs() < 1e-12);
    assert!(v.get("diagnostics").is_none());
}

#[test]
fn combine_diagnostics_matches_golden() {
    let path = golden("two_sources.csv");
    let out = estfuse(&["combine", path.to_str().unwrap(), "--diagnostics"], "");
    assert_eq!(code(&out), 0);
    let expected = std::fs::read(golden("combine_diagnostics.json")).unwrap();
    assert_eq!(out.stdout, expected);
}

#[test]
fn empty_intersection_is_undefined() {
    let out = estfuse(&["combine", "-", "--method", "intersect"], "0,0.5\n2,0.5\n");
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["status"], "undefined");
    assert_eq!(v["reason"], "empty intersection");
    assert!(v["value"].is_null());
}

#[test]
fn infinite_cover_is_undefined() {
    let out = estfuse(&["combine", "-", "--method", "cover"], "0,1\n1,inf\n");
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["reason"], "infinite cover");
}

#[test]
fn single_source_passes_through_every_method() {
    for method in ["virtual-sampling", "weighted-mean", "unweighted-mean", "intersect", "cover"] {
        let out = estfuse(&["combine", "-", "--method", method], "5,3\n");
        assert_eq!(code(&out), 0, "{method}");
        let v = json(&out);
        assert_eq!(v["value"].as_f64(), Some(5.0), "{method}");
        assert_eq!(v["uncertainty"].as_f64(), Some(3.0), "{method}");
    }
}

#[test]
fn compare_matches_golden() {
    let path = golden("two_sources.csv");
    let out = estfuse(&["compare", path.to_str().unwrap()], "");
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, std::fs::read(golden("compare_two_sources.json")).unwrap());

    let table = estfuse(&["compare", "-", "--format", "table"], "0,1\n1,2\n");
    assert_eq!(table.stdout, std::fs::read(golden("compare_two_sources.txt")).unwrap());
}

#[test]
fn compare_unanimous_and_undefined_rows() {
    let out = estfuse(&["compare", "-"], "2,1\n2,1\n");
    assert_eq!(code(&out), 0);
    for row in json(&out)["rows"].as_array().unwrap() {
        assert_eq!(row["value"].as_f64(), Some(2.0));
    }

    // undefined rows are not failures
    let out = estfuse(&["compare", "-"], "0,0.5\n2,0.5\n");
    assert_eq!(code(&out), 0);
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    let intersect = rows.iter().find(|r| r["method"] == "intersect").unwrap();
    assert_eq!(intersect["status"], "undefined");
}

#[test]
fn sigma_scale_changes_interval_widths() {
    let out = estfuse(&["combine", "-", "--method", "cover", "--sigma-scale", "0.5"], "0,1\n1,2\n");
    // half-lengths 0.5 and 1: [-0.5, 0.5] and [0, 2] cover [-0.5, 2]
    let v = json(&out);
    assert_eq!(v["value"].as_f64(), Some(0.75));
    assert_eq!(v["uncertainty"].as_f64(), Some(2.5));
    assert_eq!(code(&estfuse(&["compare", "-", "--sigma-scale", "0"], "0,1\n")), 2);
}

#[test]
fn jsonl_input() {
    let input = "{\"value\": 0, \"uncertainty\": 1, \"label\": \"a\"}\n{\"value\": 1, \"uncertainty\": 2}\n";
    let out = estfuse(&["combine", "-", "--input-format", "jsonl"], input);
    assert_eq!(code(&out), 0);
    assert!((json(&out)["value"].as_f64().unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn parse_and_usage_errors_exit_2() {
    assert_eq!(code(&estfuse(&["combine", "-"], "0,1\nabc,2\n")), 2);
    assert_eq!(code(&estfuse(&["combine", "-"], "")), 2);
    assert_eq!(code(&estfuse(&["combine", "/nonexistent/input.csv"], "")), 2);
    assert_eq!(code(&estfuse(&["combine", "-", "--method", "median"], "0,1\n")), 2);
    assert_eq!(code(&estfuse(&["audit", "-d", "D11"], "")), 2);
    assert_eq!(code(&estfuse(&["audit", "--cases", "0"], "")), 2);
    assert_eq!(code(&estfuse(&[], "")), 2);
}

#[test]
fn help_exits_0() {
    let out = estfuse(&["--help"], "");
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("audit"));
}

#[test]
fn audit_reports_and_exit_codes() {
    let out = estfuse(&["audit", "--method", "intersect", "--desideratum", "D9", "--cases", "100"], "");
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let report = &v["reports"][0];
    assert_eq!(report["verdict"], "fail");
    assert!(!report["violations"].as_array().unwrap().is_empty());

    let out = estfuse(&["audit", "--method", "cover", "-d", "D5", "--cases", "100"], "");
    assert_eq!(code(&out), 1);

    let out = estfuse(&["audit", "--method", "vs", "-d", "D1,D8", "-d", "D10", "--cases", "100"], "");
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["all_passed"], true);
    let ids: Vec<_> = v["reports"].as_array().unwrap().iter().map(|r| r["id"].clone()).collect();
    assert_eq!(ids, ["D1", "D8", "D10"]);
}

#[test]
fn audit_all_reports_every_desideratum() {
    let out = estfuse(&["audit", "-d", "all", "--cases", "20", "--format", "table"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    for k in 1..=10 {
        assert!(text.lines().any(|l| l.starts_with(&format!("D{k} "))), "D{k}");
    }
}

#[test]
fn seed_from_env_and_flag_wins() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_estfuse"));
        cmd.args(["audit", "-d", "D2", "--cases", "5"]).args(args);
        match env {
            Some(s) => cmd.env("FUSE_SEED", s),
            None => cmd.env_remove("FUSE_SEED"),
        };
        let out = cmd.output().unwrap();
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 42);
    assert_eq!(run(Some("7"), &[]), 7);
    assert_eq!(run(Some("7"), &["--seed", "8"]), 8);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["combine", "-", "--diagnostics"][..],
        &["audit", "--cases", "50", "--seed", "3"][..],
    ] {
        let a = estfuse(args, "0,1\n1,2\n3,inf\n");
        let b = estfuse(args, "0,1\n1,2\n3,inf\n");
        assert_eq!(a.stdout, b.stdout);
    }
}
