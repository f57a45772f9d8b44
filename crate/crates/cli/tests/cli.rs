use std::path::Path;
use std::process::{Command, Output};

use barrow_cli::csv_out::{self, HEADER};

fn barrow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barrow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn classify_prints_exact_json() {
    let o = barrow(&["classify", "--triangle", "0,0;1,0;0,1", "--point", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"region\":\"mu1\",\"bary\":[-3,2,2]}\n");
}

#[test]
fn exit_codes() {
    let missing_point = barrow(&["classify", "--triangle", "0,0;1,0;0,1"]);
    assert_eq!(missing_point.status.code(), Some(2));
    assert!(!missing_point.stderr.is_empty());

    let unknown_flag = barrow(&["fuzz", "--n", "10", "--frobnicate"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let degenerate = barrow(&["eval", "--triangle", "0,0;1,1;2,2", "--point", "0,1"]);
    assert_eq!(degenerate.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&degenerate.stderr).contains("degenerate"));

    let vertex_only = barrow(&["tighten", "--triangle", "0,0;1,0;0,1", "--inequality", "vertex-a"]);
    assert_eq!(vertex_only.status.code(), Some(3));

    let small_grid = barrow(&["scan", "--triangle", "0,0;1,0;0,1", "--resolution", "1"]);
    assert_eq!(small_grid.status.code(), Some(3));

    let ok = barrow(&["fuzz", "--n", "2000", "--seed", "7"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["seed"], 7);
}

#[test]
fn eval_report_keys() {
    let o = barrow(&["eval", "--triangle", "0,0;1,0;0,1", "--point", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    for k in ["inequality", "region", "lhs", "rhs", "slack", "tight", "terms"] {
        assert!(keys.iter().any(|x| x == k), "missing {k}");
    }
    assert_eq!(v["inequality"], "signed-barrow");
    assert_eq!(v["region"], "mu1");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert!((v["slack"].as_f64().unwrap() - 0.4336906708749502).abs() < 1e-12);

    let dg = barrow(&["eval", "--triangle", "0,0;1,0;0,1", "--point", "1,1", "--inequality", "dergiades"]);
    let v: serde_json::Value = serde_json::from_slice(&dg.stdout).unwrap();
    assert_eq!(v["inequality"], "dergiades");
}

#[test]
fn scan_to_file_matches_stdout_and_round_trips() {
    let args = ["scan", "--triangle", "0,0;4,0;1,2", "--resolution", "12"];
    let piped = barrow(&args);
    assert_eq!(piped.status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("barrow-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let written = barrow(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    let file = std::fs::read(&path).unwrap();
    assert_eq!(file, piped.stdout);
    std::fs::remove_dir_all(&dir).unwrap();

    let header = stdout(&piped).lines().next().unwrap();
    assert_eq!(header, HEADER.join(","));
    let rows = csv_out::read_rows(&piped.stdout[..]).unwrap();
    assert_eq!(rows.len(), 144);

    let json = barrow(&[&args[..], &["--json"]].concat());
    let lines: Vec<_> = stdout(&json).lines().collect();
    assert_eq!(lines.len(), 144);
    let first: barrow_core::harness::ScanRow = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first, rows[0]);
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for args in [
        &["tighten", "--triangle", "0,0;4,0;1,2", "--starts", "6", "--seed", "9"][..],
        &["scan", "--triangle", "0,0;4,0;1,2", "--resolution", "9"][..],
        &["fuzz", "--n", "3000", "--shape", "near-degenerate", "--seed", "11"][..],
    ] {
        let a = barrow(args);
        let b = barrow(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn svg_matches_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/regions.svg");
    let dir = std::env::temp_dir().join(format!("barrow-svg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("map.svg");
    let o = barrow(&[
        "scan", "--triangle", "0,0;4,0;1,2", "--bbox", "-2,-1.5,6,3.5", "--resolution", "40",
        "--svg-width", "400", "--svg", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(golden).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
