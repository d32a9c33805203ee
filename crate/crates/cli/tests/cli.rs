use std::fs;
use std::process::{Command, Output};

fn atomchip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomchip")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn every_subcommand_runs_at_defaults() {
    for sub in ["barrier", "resolution", "corrugation", "noise", "cp", "lifetime", "nanowire"] {
        let o = atomchip(&[sub]);
        assert_eq!(code(&o), 0, "{sub}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.starts_with(&format!("# scenario={sub} config_hash=")), "{text}");
        assert_eq!(text.lines().count(), 3, "{sub}: header, columns, one row");
    }
}

#[test]
fn barrier_profile_is_symmetric() {
    let o = atomchip(&["barrier", "--profile", "--set", "samples=11", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let first = rows[0][1].as_f64().unwrap();
    let last = rows[10][1].as_f64().unwrap();
    assert!((first - last).abs() <= 1e-12 * first.abs());
    // peak over the wire
    assert!(rows[5][1].as_f64().unwrap() > first);
}

#[test]
fn report_verdicts() {
    let o = atomchip(&["report", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row[9], "PASS");
    assert!(row[8].as_f64().unwrap() > 1e4);

    let o = atomchip(&["report", "--scenario", "slab", "--format", "json"]);
    assert_eq!(code(&o), 0, "a failing design is still a successful report");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0][9], "FAIL");
    assert!(v["rows"][0][10].as_str().unwrap().contains("spin flip"));
}

#[test]
fn sweep_from_config_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.json");
    fs::write(
        &cfg,
        r#"{
            "name": "scan",
            "params": {"side": 50, "I": "40 uA"},
            "sweep": [{"parameter": "d", "values": [0.5, 1.0, 2.0]}],
            "outputs": ["spinFlip", "safeCurrent"],
            "seed": 3
        }"#,
    )
    .unwrap();
    let out = dir.path().join("scan.csv");
    let o = atomchip(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("seed=3"));
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let life: Vec<f64> = rdr.records().map(|r| r.unwrap()[3].parse().unwrap()).collect();
    assert_eq!(life.len(), 3);
    assert!(life.windows(2).all(|w| w[1] > w[0]), "{life:?}");
}

#[test]
fn builtin_scenario_and_seed() {
    let a = stdout(&atomchip(&["corrugation", "--scenario", "fig5", "--seed", "1"]));
    let b = stdout(&atomchip(&["corrugation", "--scenario", "fig5", "--seed", "2"]));
    assert_eq!(a.lines().count(), 2 + 14);
    assert_ne!(a, b);
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["sweep"][..],
        &["noise", "--set", "nosuch=1"],
        &["noise", "--set", "d=-1"],
        &["noise", "--set", "d"],
        &["cp", "--set", "cpSources=magic"],
        &["sweep", "--scenario", "fig99"],
        &["sweep", "--config", "/nonexistent/scan.json"],
        &["noise", "--format", "xml"],
    ] {
        assert_eq!(code(&atomchip(args)), 2, "{args:?}");
    }
}

#[test]
fn physics_failures_exit_1() {
    // 10 m up, no sane current forms the barrier
    let o = atomchip(&["barrier", "--set", "d=1e7"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("error:"));
    let o = atomchip(&["noise", "--set", "d=0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn list_names_builtins() {
    let text = stdout(&atomchip(&["list"]));
    for n in ["fig3", "fig12", "conclusion"] {
        assert!(text.lines().any(|l| l == n));
    }
}
