//! CLI behaviors outside the acceptance gate: worker-count independence,
//! report schema fields, and help output.

use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_piqes")
}

#[test]
fn worker_count_does_not_change_reports() {
    let args = ["gl2-verify", "--n", "4", "--seed", "3", "--trials", "12"];
    let run = |workers: &str| {
        let out = Command::new(bin())
            .args(args)
            .env("PIQES_WORKERS", workers)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one, four);
}

#[test]
fn heun_report_schema() {
    let out = Command::new(bin())
        .args(["qes-heun", "--n", "2", "--seed", "19", "--trials", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["params"]["seed"], 19);
    let trials = v["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 2);
    for t in trials {
        assert_eq!(t["exact_zero"], true);
        assert_eq!(t["char_poly"].as_array().unwrap().len(), 4); // monic cubic
        assert_eq!(t["eigenvalues"].as_array().unwrap().len(), 3);
        assert!(t["eigenvalues"][0]["re"].is_number());
        assert!(t["eigenvalues"][0]["im"].is_number());
    }
}

#[test]
fn spectra_csv_implies_numeric_run() {
    let dir = std::env::temp_dir().join(format!("piqes-cli-behavior-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("spectra.csv");
    let out = Command::new(bin())
        .args([
            "qes-sextic",
            "--n",
            "1",
            "--q",
            "1",
            "--a",
            "1",
            "--b",
            "1",
            "--spectra-csv",
            csv.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["numeric_comparison"]["all_matched"].as_bool().unwrap());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("index,energy,sector\n"));
    assert!(text.lines().nth(1).unwrap().ends_with(",odd"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn help_exits_zero() {
    let out = Command::new(bin()).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in [
        "gl2-verify",
        "qes-heun",
        "qes-sextic",
        "classical",
        "cs-verify",
    ] {
        assert!(text.contains(sub), "help misses {sub}");
    }
}

#[test]
fn missing_seed_is_usage_error() {
    let out = Command::new(bin())
        .args(["gl2-verify", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
