//! End-to-end tests of the cgf binary: output shapes, determinism across
//! thread counts, and exit codes.

use std::process::{Command, Output};

fn cgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cgf(args);
    assert!(
        out.status.success(),
        "cgf {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn heisenberg_invariant_series() {
    let out = stdout(&["cgf", "heisenberg", "--radius", "10", "--method", "invariant"]);
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('n'))
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",exact")));
    assert_eq!(rows[0], "1,5,exact");
    assert!(out.starts_with("# cgf v"));
}

#[test]
fn free_group_radius_zero_oracle() {
    let out = stdout(&[
        "cgf",
        "free:2",
        "--radius",
        "0",
        "--method",
        "oracle",
        "--conj-radius",
        "1",
    ]);
    assert!(out.ends_with("n,value,kind\n0,1,upper\n"));
}

#[test]
fn witness_wrzz_reports_sixteen_distinct_keys() {
    let out = stdout(&["witness", "wr-zz", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 16);
    assert_eq!(v["expected"], 16);
    assert_eq!(v["distinct_keys"], 16);
    assert_eq!(v["pairwise_distinct"], true);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 16);
}

#[test]
fn byte_identical_across_thread_counts() {
    for args in [
        vec!["cgf", "heisenberg", "--radius", "8", "--method", "invariant"],
        vec!["ball", "lamp-sinf", "--radius", "7"],
        vec!["witness", "wr-zz", "--n", "6"],
        vec!["cgf", "bs1n:2", "--radius", "5", "--method", "oracle", "--conj-radius", "5"],
        vec!["selftest", "--seed", "3"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut eight = args.clone();
        eight.extend(["--threads", "8"]);
        assert_eq!(stdout(&one), stdout(&eight), "args {args:?}");
    }
}

#[test]
fn unknown_group_is_a_usage_error() {
    let out = cgf(&["ball", "nope", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cgf(&["cgf", "heisenberg", "--radius", "2", "--method", "wat"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cgf(&["witness", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_method_needs_a_complete_invariant() {
    let out = cgf(&["cgf", "bsmn:2:4", "--radius", "3", "--method", "invariant"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invariant"), "stderr: {err}");
    // the oracle method works for BS(2,4)
    let out = stdout(&[
        "cgf",
        "bsmn:2:4",
        "--radius",
        "3",
        "--method",
        "oracle",
        "--conj-radius",
        "3",
    ]);
    assert!(out.contains(",upper"));
}

#[test]
fn cap_produces_truncated_partial_output() {
    let out = stdout(&["ball", "free:2", "--radius", "10", "--cap", "100"]);
    assert!(out.contains("# truncated=true"));
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('n'))
        .collect();
    assert!(rows.len() < 10);
    assert!(!rows.is_empty());
}

#[test]
fn diagram_subcommand_with_presentation_file() {
    let dir = std::env::temp_dir().join(format!("cgf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pres = dir.join("wreath.pres");
    std::fs::write(&pres, "# wreath product presentation\nab -> a\nb -> b\nbc -> c\n").unwrap();
    let out = stdout(&[
        "diagram",
        "--presentation",
        pres.to_str().unwrap(),
        "--expr",
        "(inv(cell(0)) + eps(c)) * (eps(a) + cell(1) + eps(c)) * (cell(0) + eps(c))",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spherical"], true);
    assert_eq!(v["reduced"]["top"], "ac");
    assert_eq!(v["reduced"]["cells"], 3);
    assert_eq!(v["conjugacy_key"], "eps(a)? + 1cells + eps(c)?");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fit_pipeline_reads_emitted_csv() {
    let dir = std::env::temp_dir().join(format!("cgf-fit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("series.csv");
    let out = cgf(&[
        "cgf",
        "heisenberg",
        "--radius",
        "12",
        "--method",
        "invariant",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = stdout(&[
        "fit",
        "--input",
        csv.to_str().unwrap(),
        "--tail-start",
        "6",
        "--bound-exponent",
        "3",
        "--window",
        "6:12",
    ]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    let models = v["models"].as_array().unwrap();
    assert_eq!(models.len(), 3);
    // n^2 log n data: the polynomial-with-log model should not be last
    assert!(models[0]["residual"].as_f64().unwrap() <= models[2]["residual"].as_f64().unwrap());
    assert_eq!(v["bound"]["bounded"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = stdout(&["selftest", "--seed", "11"]);
    let b = stdout(&["selftest", "--seed", "11"]);
    assert_eq!(a, b);
    assert!(a.contains("0 failed"));
}

#[test]
fn env_var_sets_default_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_cgf"))
        .args(["cgf", "heisenberg", "--radius", "8", "--method", "invariant"])
        .env("CGF_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let plain = stdout(&["cgf", "heisenberg", "--radius", "8", "--method", "invariant"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), plain);
}
