use atomchip::par::{with_execution, Execution};
use atomchip::scenario::{builtin, builtin_names, run_scenario, Format, ResultTable, Scenario};

fn col(t: &ResultTable, name: &str) -> Vec<f64> {
    t.column(name).unwrap().into_iter().map(|v| v.unwrap()).collect()
}

#[test]
fn identical_across_parallelism() {
    for name in ["fig5", "fig13", "fig3"] {
        let sc = builtin(name).unwrap();
        let a = with_execution(Execution::Sequential, || run_scenario(&sc).unwrap());
        let b = with_execution(Execution::Parallel, || run_scenario(&sc).unwrap());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap(), "{name}");
        assert_eq!(a.to_json().unwrap(), run_scenario(&sc).unwrap().to_json().unwrap());
    }
}

#[test]
fn builtins_complete_without_error_cells() {
    for name in builtin_names() {
        let t = run_scenario(&builtin(name).unwrap()).unwrap();
        assert_eq!(t.error_cells(), 0, "{name}");
        assert_eq!(t.rows.len(), builtin(name).unwrap().rows().unwrap());
    }
}

#[test]
fn fig3_regression() {
    // frozen from the first validated run
    let t = run_scenario(&builtin("fig3").unwrap()).unwrap();
    let want = [0.2231, 0.1297, 0.0706, 0.0298, 0.0152];
    for (g, w) in col(&t, "dI_over_I").iter().zip(want) {
        assert!((g / w - 1.0).abs() < 2e-3, "{g} vs {w}");
    }
}

#[test]
fn fig13_regression() {
    let t = run_scenario(&builtin("fig13").unwrap()).unwrap();
    let life = col(&t, "spin_flip_lifetime");
    // 50 nm wire at 0.5 μm, and 25 nm at 1 μm
    assert!((life[9] / 4.054 - 1.0).abs() < 2e-3);
    assert!((life[5] / 116.7 - 1.0).abs() < 2e-3);
}

#[test]
fn config_round_trip() {
    let sc = builtin("fig12").unwrap();
    let json = serde_json::to_string(&sc).unwrap();
    let back = Scenario::from_json(&json).unwrap();
    assert_eq!(back, sc);
    assert_eq!(back.config_hash(), sc.config_hash());
}

#[test]
fn seed_changes_only_seeded_columns() {
    let mut sc = builtin("fig5").unwrap();
    let a = run_scenario(&sc).unwrap();
    sc.seed = 99;
    let b = run_scenario(&sc).unwrap();
    assert_eq!(col(&a, "dB_over_B"), col(&b, "dB_over_B"));
    assert_ne!(col(&a, "dB_over_B_peak"), col(&b, "dB_over_B_peak"));
    assert_ne!(a.provenance.config_hash, b.provenance.config_hash);
    let _ = Format::Csv;
}
