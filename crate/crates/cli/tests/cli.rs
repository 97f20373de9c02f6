//! End-to-end CLI behavior: exit codes, schema diagnostics and output
//! determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gammacap"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gammacap-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn two_disk_file() -> PathBuf {
    write_temp(
        "two-disks.json",
        r#"{"components":[
            {"type":"circle","center":[-2.0,0.0],"radius":1.0},
            {"type":"circle","center":[2.0,0.0],"radius":1.0}]}"#,
    )
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn capacity_exits_zero_when_gap_target_met() {
    let out = bin()
        .args(["capacity"])
        .arg(two_disk_file())
        .args(["--rings", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    assert!(text.contains("1.875000000000000"));
    assert!(text.contains("1.882812500000000"));
    assert!(text.contains("gap-target-met"));
}

#[test]
fn capacity_emits_five_rows_at_tiny_gap_target() {
    let out = bin()
        .args(["capacity"])
        .arg(two_disk_file())
        .args(["--rings", "4", "--gap-target", "1e-14"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stage limit reached before the gap target");
    let text = stdout_str(&out);
    let rows = text.lines().filter(|l| l.starts_with(char::is_numeric)).count();
    assert_eq!(rows, 5, "one row per ring count 0..=4:\n{text}");
}

#[test]
fn capacity_missing_file_exits_one_without_partial_output() {
    let out = bin().args(["capacity", "/nonexistent/geometry.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty(), "no partial output on stdout");
    assert!(stderr_str(&out).contains("cannot read"));
}

#[test]
fn capacity_schema_error_names_the_field() {
    let bad = write_temp(
        "bad-radius.json",
        r#"{"components":[{"type":"circle","center":[0,0],"radius":-1.0}]}"#,
    );
    let out = bin().args(["capacity"]).arg(bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("radius"));
}

#[test]
fn capacity_dump_basis_emits_tagged_variants() {
    let out = bin()
        .args(["capacity"])
        .arg(two_disk_file())
        .args(["--rings", "1", "--dump-basis"])
        .output()
        .unwrap();
    let err = stderr_str(&out);
    assert!(err.contains(r#""kind":"simple_pole""#), "stderr: {err}");
}

#[test]
fn capacity_corner_family_emits_one_row_per_order() {
    let square = write_temp(
        "square.json",
        r#"{"components":[{"type":"polyarcs",
            "segments":[
                {"kind":"line","from":[1.0,0.0],"to":[0.0,1.0]},
                {"kind":"line","from":[0.0,1.0],"to":[-1.0,0.0]},
                {"kind":"line","from":[-1.0,0.0],"to":[0.0,-1.0]},
                {"kind":"line","from":[0.0,-1.0],"to":[1.0,0.0]}],
            "corners":[
                {"vertex":[1.0,0.0],"interior_angle":1.5707963267948966},
                {"vertex":[0.0,1.0],"interior_angle":1.5707963267948966},
                {"vertex":[-1.0,0.0],"interior_angle":1.5707963267948966},
                {"vertex":[0.0,-1.0],"interior_angle":1.5707963267948966}],
            "anchor":[0.0,0.0]}]}"#,
    );
    let out = bin()
        .args(["capacity"])
        .arg(square)
        .args(["--corner-basis", "--n", "6"])
        .output()
        .unwrap();
    let text = stdout_str(&out);
    let rows = text.lines().filter(|l| l.starts_with(char::is_numeric)).count();
    assert_eq!(rows, 5, "orders 2..=6:\n{text}");
    assert!(text.contains("0.8346"));
}

#[test]
fn subadd_zero_steps_is_usage_error() {
    let cfg = write_temp("pair.json", r#"{"centers_e":[[-2,0]],"centers_f":[[2,0]]}"#);
    let out = bin().args(["subadd"]).arg(cfg).args(["--r-steps", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn subadd_output_is_deterministic_and_headed() {
    let cfg = write_temp(
        "random.json",
        r#"{"random":{"n_e":2,"n_f":2,"seed":5,"min_gap":1.0}}"#,
    );
    let run = || {
        bin()
            .args(["subadd"])
            .arg(&cfg)
            .args(["--r-steps", "5"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "identical inputs and seeds must give identical CSV bytes");
    let text = stdout_str(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("r,ratio_lower,ratio_upper,gamma_union_lower,gamma_union_upper,gamma_E_lower,gamma_E_upper,gamma_F_lower,gamma_F_upper")
    );
    assert_eq!(lines.count(), 5);
}

#[test]
fn subadd_seed_flag_overrides_config_seed() {
    let cfg = write_temp(
        "random2.json",
        r#"{"random":{"n_e":2,"n_f":2,"seed":5,"min_gap":1.0}}"#,
    );
    let base = bin().args(["subadd"]).arg(&cfg).args(["--r-steps", "3"]).output().unwrap();
    let overridden = bin()
        .args(["subadd"])
        .arg(&cfg)
        .args(["--r-steps", "3", "--seed", "6"])
        .output()
        .unwrap();
    assert_ne!(base.stdout, overridden.stdout);
}

#[test]
fn rational_verdict_json_round_trips() {
    let map = write_temp(
        "deg3.json",
        r#"{"residues":[[0.2,0],[0.1,0],[0.4,0]],"poles":[[-2,0],[0,0],[5,0]]}"#,
    );
    let run = || {
        bin()
            .args(["rational"])
            .arg(&map)
            .args(["--degree", "3"])
            .output()
            .unwrap()
    };
    let out = run();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["verdict"], "consistent-with-ahlfors");
    let sum_re = v["sum_residues"][0].as_f64().unwrap();
    assert!((sum_re - 0.7).abs() < 1e-14);
    assert_eq!(v["stages"].as_array().unwrap().len(), 3);
    // byte-identical across runs
    let again = run();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn rational_disconnected_region_exits_three() {
    // residues large enough that a critical value escapes the unit disk
    let map = write_temp(
        "disconnected.json",
        r#"{"residues":[[5.0,0],[5.0,0]],"poles":[[0,0],[3,0]]}"#,
    );
    let out = bin().args(["rational"]).arg(&map).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["error"], "critical-value-outside-disk");
}

#[test]
fn rational_duplicate_poles_rejected() {
    let map = write_temp(
        "dup.json",
        r#"{"residues":[[1,0],[1,0]],"poles":[[0,0],[0,0]]}"#,
    );
    let out = bin().args(["rational"]).arg(&map).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
