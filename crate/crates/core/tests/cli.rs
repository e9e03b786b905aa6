//! End-to-end checks of the command-line binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystal-partitions"))
        .args(["--no-timing", "--jobs", "1"])
        .args(args)
        .env_remove("CRYSTAL_PARTITIONS_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_main_passes() {
    let o = run(&[
        "verify", "main", "--i", "0", "--n", "1", "--rel", "exact", "--order", "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "PASS");
    assert!(v["first_mismatch"].is_null());
    assert_eq!(v["order"], 20);
}

#[test]
fn count_csv_rows() {
    let o = run(&[
        "count", "c", "--i", "0", "--n", "1", "--max", "5", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m,count\n0,1\n1,1\n2,1\n3,2\n4,2\n5,3\n");
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(
        run(&["verify", "main", "--i", "5", "--n", "3", "--order", "4"])
            .status
            .code(),
        Some(2)
    );
    let o = run(&["nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn grids_pass_and_progress_goes_to_stderr() {
    let o = run(&["grid", "main", "--n-max", "4", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 30);
    assert_eq!(v["failed"], 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("main:exact:i=0:n=0"));

    let o = run(&[
        "grid",
        "character",
        "--modules",
        "L01,2L0,2L1",
        "--order",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["grid", "main"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["grid", "main", "--n-max", "2", "--order", "10"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn order_defaults_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_crystal-partitions"))
        .args(["--no-timing", "verify", "weyl-kac", "--i", "1", "--n", "2"])
        .env("CRYSTAL_PARTITIONS_ORDER", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(v["order"], 7);
}

#[test]
fn character_and_series_outputs() {
    let o = run(&["character", "--module", "2L0", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"][0]["coeff"], "1");

    let o = run(&[
        "series", "level2", "--module", "L01", "--order", "0", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = run(&[
        "enum", "level2", "--module", "2L0", "--max", "0", "--format", "text",
    ]);
    assert_eq!(stdout(&o), "0 (-1_c2, 1_c0)\n");
}

#[test]
fn bijection_checks_pass() {
    assert_eq!(
        run(&[
            "bijection",
            "phi",
            "--n",
            "2",
            "--max-len",
            "4",
            "--max",
            "8"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["bijection", "psi", "--n", "2", "--max", "10"])
            .status
            .code(),
        Some(0)
    );
}
