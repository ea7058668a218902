//! End-to-end checks of the binary surface: file parsing, exit codes,
//! construct/analyze round trips, report determinism across worker counts,
//! and the cap override environment variable.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_covdim"))
}

fn example_file() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../covdim/testdata/gf3_11_5.code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("covdim-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_the_shipped_example() {
    let out = bin().arg("analyze").arg(example_file()).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("n: 11"));
    assert!(text.contains("d_perp: 5"));
    assert!(text.contains("gamma: 2"));
    assert!(text.contains("critical_exponent: 2"));
    assert!(text.contains("kung_slack: 1"));
    assert!(text.contains("class: HOLDS_STRICT"));
}

#[test]
fn analyze_json_with_tables_and_witness() {
    let out = bin()
        .arg("analyze")
        .arg(example_file())
        .args([
            "--json",
            "--swd",
            "2",
            "--swd",
            "5",
            "--witness",
            "--charpoly",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["d"], 6); // the dual of the [11, 6, 5] perfect ternary Golay code
    assert_eq!(v["d_perp"], 5);
    let swd = v["swd"].as_array().unwrap();
    assert!(swd.iter().any(|t| t["r"] == 2
        && t["counts"]
            .as_array()
            .unwrap()
            .iter()
            .any(|pair| pair[0] == 11 && pair[1] == 330)));
    assert!(swd.iter().any(|t| t["r"] == 5
        && t["counts"]
            .as_array()
            .unwrap()
            .iter()
            .any(|pair| pair[0] == 11 && pair[1] == 1)));
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 2);
    assert!(v["charpoly"].as_array().unwrap().len() == 6);
}

#[test]
fn analyze_rejects_bad_input_with_exit_1() {
    let missing = bin()
        .arg("analyze")
        .arg("does-not-exist.code")
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));

    let garbage = tmp("garbage.code");
    std::fs::write(&garbage, "not a code file\n").unwrap();
    let out = bin().arg("analyze").arg(&garbage).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn caps_env_gives_exit_3() {
    let out = bin()
        .arg("analyze")
        .arg(example_file())
        .env("CCDIM_CAPS", "codewords=16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zero_column_prints_infinite_gamma() {
    let file = tmp("zerocol.code");
    std::fs::write(&file, "2 2 3\n1 0 1\n0 0 1\n").unwrap();
    let out = bin().arg("analyze").arg(&file).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("gamma: inf"));
    assert!(text.contains("class: NOT_APPLICABLE"));
}

#[test]
fn construct_dual_hamming_roundtrip() {
    let file = tmp("simplex.code");
    let out = bin()
        .args(["construct", "dual-hamming", "--q", "2", "--k", "3", "-o"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin().arg("analyze").arg(&file).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n: 7"));
    assert!(text.contains("gamma: 3"));
    assert!(text.contains("class: EXCEPTION_DUAL_HAMMING"));
}

#[test]
fn construct_rs_and_parity_dual() {
    let file = tmp("rs.code");
    let out = bin()
        .args(["construct", "rs", "--q", "3", "--n", "4", "--k", "2", "-o"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&bin().arg("analyze").arg(&file).output().unwrap());
    assert!(text.contains("d: 3"));
    assert!(text.contains("gamma: 2"));

    let out = bin()
        .args(["construct", "parity-dual", "--n", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("2 4 5"));
}

#[test]
fn construct_block_with_verification() {
    let file = tmp("block.code");
    let out = bin()
        .args([
            "construct",
            "block",
            "--q",
            "2",
            "--k",
            "4",
            "--m",
            "2",
            "--verify",
            "-o",
        ])
        .arg(&file)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("is 2-block: true"));
    assert!(text.contains("minimal: true"));
    let listing = std::fs::read_to_string(format!("{}.points", file.display())).unwrap();
    assert!(listing.lines().count() >= 4);

    // the non-minimal case is reported as such
    let out = bin()
        .args([
            "construct",
            "block",
            "--q",
            "2",
            "--k",
            "3",
            "--m",
            "2",
            "--verify",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("is 1-block: true"));
    assert!(text.contains("minimal: false"));
}

#[test]
fn search_reports_identical_across_workers() {
    let a = tmp("search-w1.json");
    let b = tmp("search-w4.json");
    for (file, workers) in [(&a, "1"), (&b, "4")] {
        let out = bin()
            .args([
                "search",
                "--q",
                "2",
                "--n-max",
                "6",
                "--k-max",
                "3",
                "--simple",
                "--workers",
                workers,
                "--report",
            ])
            .arg(file)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains("violations=0"));
    }
    let ja = std::fs::read(&a).unwrap();
    let jb = std::fs::read(&b).unwrap();
    assert_eq!(ja, jb);
    let parsed: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(parsed["summary"]["violation"], 0);
    assert!(!parsed["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn search_csv_rows_match_verdicts() {
    let json = tmp("search.json");
    let csv = tmp("search.csv");
    let out = bin()
        .args([
            "search", "--q", "3", "--n-max", "4", "--k-max", "2", "--simple", "--report",
        ])
        .arg(&json)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let rows = csv_text.lines().count() - 1; // header
    assert_eq!(rows, report["verdicts"].as_array().unwrap().len());
    assert!(csv_text.starts_with("id,q,k,n,gamma,d_perp,kung_slack,class,open_regime"));
}

#[test]
fn verify_paper_list_and_filter() {
    let out = bin().args(["verify-paper", "--list"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("worked-example"));
    assert!(text.contains("search-determinism"));

    let out = bin()
        .args(["verify-paper", "--only", "worked-example"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));

    let out = bin()
        .args(["verify-paper", "--only", "no-such-claim"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
