use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ihara-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ihara-lab")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn unknown_check_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out =
        run(&["verify", "--graph", "petersen", "--checks", "oracle,nonsense", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
    assert!(!report.exists());
}

#[test]
fn petersen_oracle_and_ihara_bass_pass() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("summary.json");
    let out =
        run(&["verify", "--graph", "petersen", "--checks", "oracle,ihara-bass", "--report", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = read_json(&report);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["metric"].as_f64(), Some(0.0));
        assert!(r["seconds"].as_f64().is_some());
        assert!(r["tolerance"].is_number());
    }
}

#[test]
fn lps_13_5_band_checks_pass() {
    let out = run(&["verify", "--lps", "13,5", "--checks", "cusp,cesaro", "--horizons", "50,100,200"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> =
        summary["results"].as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["cesaro", "cusp"]);
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let report = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        serde_json::json!({"graph": "k33", "checks": ["chebyshev", "huang"], "report": report}).to_string(),
    )
    .unwrap();
    let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_json(&report)["results"].as_array().unwrap().len(), 2);

    std::fs::write(&cfg, r#"{"graph": "k33", "checks": ["huang"], "colour": 1}"#).unwrap();
    assert!(!run(&["verify", "--config", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["spectrum", "petersen"],
        vec!["nbt", "cube", "--m-max", "12"],
        vec!["limits", "k33", "--k", "2"],
        vec!["huang", "k4", "--m-max", "10"],
    ]
    .into_iter()
    .enumerate()
    {
        let a = dir.path().join(format!("{i}a.csv"));
        let b = dir.path().join(format!("{i}b.csv"));
        for path in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--emit", path.to_str().unwrap()]);
            assert!(run(&full).status.success(), "{args:?}");
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{args:?}");
    }
}

#[test]
fn limits_refuses_when_angle_condition_fails() {
    let out = run(&["limits", "k33", "--k", "4"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("angle condition"));
    assert!(run(&["limits", "petersen", "--k", "4"]).status.success());
}

#[test]
fn nbt_counts_match_known_values() {
    let out = run(&["nbt", "petersen", "--m-max", "6"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<Vec<String>> = rdr.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect();
    assert_eq!(rows[4][1], "120");
    assert_eq!(rows[5][1], "120");
    let float: f64 = rows[4][2].parse().unwrap();
    assert!((float - 120.0).abs() < 1e-9);
}

#[test]
fn oracle_subcommand() {
    let out = run(&["oracle", "k4", "--what", "reduced-cycles", "--m", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "24");
    let out = run(&["oracle", "--what", "lattice", "--qprime", "13", "--target", "25"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let out = run(&["oracle", "petersen", "--what", "reduced-cycles", "--m", "10", "--budget", "10"]);
    assert!(!out.status.success());
}

#[test]
fn zeta_exact_emits_rational_strings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    assert!(run(&["zeta", "k4", "--order", "6", "--emit", path.to_str().unwrap()]).status.success());
    let v = read_json(&path);
    assert_eq!(v["cycle_counts"][2], "24");
    assert_eq!(v["reciprocal"][3], "-8");
    assert!(run(&["zeta", "k4", "--order", "6", "--mode", "float"]).status.success());
}

#[test]
fn lps_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x13_5.json");
    let out = run(&["lps", "--p", "13", "--q", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(dir.path().join("x13_5.lps.json").exists());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("vertices 120"));
    assert!(stdout.contains("degree 14"));
    let out = run(&["verify", "--graph", path.to_str().unwrap(), "--checks", "cusp", "--horizons", "50,100,200"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn stf_and_cuspgen() {
    let out = run(&["stf", "k33", "--hhat", "2:1,4:0.5", "--hhat0", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-8);
    let out = run(&["cuspgen", "--p", "13", "--q", "5", "--order", "4"]);
    assert!(out.status.success());
    assert!(run(&["stf", "k33", "--hhat", "0:1"]).status.code() == Some(1));
}
