//! End-to-end tests of the `dch` binary.

use std::path::Path;
use std::process::{Command, Output};

fn dch(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dch"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dch-test-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const SMALL: &[&str] = &[
    "--family", "Z2^d", "--d", "2", "--kappa", "1/2,1/3", "--max-n", "1", "--max-s", "4",
];

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempdir("verify");
    let mut args = vec!["verify"];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(&["--out", "run1", "--seed", "7"]);
    let out = dch(&dir, &args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("exact-pass"));
    assert!(stdout.contains("0 failed"));

    let mut args2 = vec!["verify"];
    args2.extend_from_slice(SMALL);
    args2.extend_from_slice(&["--out", "run2", "--seed", "7"]);
    let out2 = dch(&dir, &args2);
    assert!(out2.status.success());
    let a = std::fs::read(dir.join("run1/report.json")).unwrap();
    let b = std::fs::read(dir.join("run2/report.json")).unwrap();
    assert_eq!(a, b, "same config and seed must give byte-identical reports");
}

#[test]
fn verify_rejects_zero_multiplicity() {
    let dir = tempdir("badkappa");
    let out = dch(
        &dir,
        &["verify", "--family", "Z2^d", "--d", "2", "--kappa", "0,0"],
    );
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_runs_non_hyperoctahedral_families() {
    let dir = tempdir("a2");
    let out = dch(
        &dir,
        &[
            "verify", "--family", "A", "--d", "3", "--kappa", "1", "--max-n", "1", "--max-s",
            "4", "--mc-samples", "20000", "--seed", "3",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "numeric-pass"));
    assert!(checks.iter().any(|c| c["name"] == "mc-orthogonality"));
}

#[test]
fn table_round_trips_through_the_polynomial_parser() {
    let dir = tempdir("table");
    let out = dch(
        &dir,
        &[
            "table", "--family", "Z2^d", "--d", "2", "--kappa", "1/2,1/3", "--n", "1",
            "--max-s", "4", "--out", "table.json", "--format", "json",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.join("table.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    // every polynomial re-parses through the library type
    for row in rows {
        let _: dunkl_hermite::multipoly::CPoly =
            serde_json::from_value(row["poly"].clone()).unwrap();
    }
    // H_1 radial coefficients
    assert_eq!(rows[1]["radial"], serde_json::json!(["0", "-2"]));
}

#[test]
fn empty_s_list_gives_empty_table() {
    let dir = tempdir("emptytable");
    let out = dch(
        &dir,
        &[
            "table", "--family", "Z2^d", "--d", "2", "--kappa", "1/2,1/3", "--n", "0",
            "--s-list", "--format", "json", "--out", "empty.json",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("empty.json")).unwrap()).unwrap();
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn export_basis_writes_parseable_output() {
    let dir = tempdir("basis");
    let out = dch(
        &dir,
        &[
            "export-basis", "--family", "Z2^d", "--d", "3", "--kappa", "1/2,1/3,1", "--n", "2",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.join("basis_n2.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["rank"], 3);
    assert_eq!(parsed["expected_rank"], 3);
    assert_eq!(parsed["elements"].as_array().unwrap().len(), 3);
    assert!(parsed["norms"].as_array().unwrap().len() == 3);
}

#[test]
fn quad_selftest_passes() {
    let dir = tempdir("quad");
    let out = dch(&dir, &["quad-selftest", "--kappa", "1/3", "--quad-order", "24"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("quad_selftest.json")).unwrap())
            .unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn config_file_layering() {
    let dir = tempdir("config");
    std::fs::write(
        dir.join("cfg.json"),
        r#"{"family": "Z2^d", "d": 2, "kappa": ["1/2", "1/3"], "max_n": 0, "max_s": 2}"#,
    )
    .unwrap();
    // flag overrides the config file's max_s
    let out = dch(
        &dir,
        &[
            "table", "--config", "cfg.json", "--max-s", "1", "--format", "json", "--out",
            "t.json",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("t.json")).unwrap()).unwrap();
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);

    let out = dch(&dir, &["verify", "--config", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}
