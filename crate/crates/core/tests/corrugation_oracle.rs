use std::f64::consts::PI;

use atomchip::corrugation::spectrum::edge_spectrum;
use atomchip::corrugation::{biot_savart_oracle, corrugation_rms, synth_roughness, delta_b_spectrum, EdgeRoughness, ModeSum, OracleOptions};
use atomchip::domain::WireGeometry;
use num_complex::Complex64;

/// Complex amplitude a of δB = 2Re(a e^{ikx}) from n samples over a period.
fn project(k: f64, xs: &[f64], b: &[f64]) -> Complex64 {
    let n = xs.len() as f64;
    xs.iter()
        .zip(b)
        .map(|(&x, &v)| Complex64::from_polar(v, -k * x))
        .sum::<Complex64>()
        / n
}

#[test]
fn single_modes_match_biot_savart() {
    let current = 1e-3;
    for (lambda, w, h) in [(1e-6, 40e-9, 50e-9), (0.8e-6, 30e-9, 30e-9), (2e-6, 90e-9, 50e-9)] {
        let k = 2.0 * PI / lambda;
        assert!(k * w <= 0.3);
        let g = WireGeometry::new(w, h, 1e-3).unwrap();
        let c = Complex64::new(1e-9, 0.4e-9);
        let edges = EdgeRoughness::single_mode(k, c, c);
        for z in [0.3e-6, 1e-6] {
            let xs: Vec<f64> = (0..8).map(|i| i as f64 * lambda / 8.0).collect();
            let b = biot_savart_oracle(&edges, &g, current, z, &xs, OracleOptions::default()).unwrap();
            let oracle = project(k, &xs, &b);
            let analytic = edge_spectrum(&edges, lambda, current, z).unwrap().amplitude[0];
            let err = (oracle - analytic).norm() / analytic.norm();
            assert!(err < 0.05, "λ={lambda} z={z}: oracle {oracle} analytic {analytic} ({err})");
        }
    }
}

#[test]
fn antisymmetric_edges_give_no_field() {
    let k = 2.0 * PI / 1e-6;
    let g = WireGeometry::new(40e-9, 50e-9, 1e-3).unwrap();
    let c = Complex64::new(1e-9, 0.0);
    let sym = EdgeRoughness::single_mode(k, c, c);
    let anti = EdgeRoughness::single_mode(k, c, -c);
    let xs = [0.0, 0.25e-6];
    let a = biot_savart_oracle(&anti, &g, 1e-3, 0.5e-6, &xs, OracleOptions::default()).unwrap();
    let s = biot_savart_oracle(&sym, &g, 1e-3, 0.5e-6, &xs, OracleOptions::default()).unwrap();
    let scale = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(a.iter().all(|v| v.abs() < 1e-6 * scale));
}

#[test]
fn ensemble_matches_closed_form() {
    // long periodic wire so the closed form applies; the rms of each seed
    // is taken over a window, not the whole period, so seeds really differ
    let (l, lmin, z, current) = (40e-6, 0.1e-6, 1e-6, 1e-3);
    for alpha in [0.0, 0.5] {
        let window = 10e-6;
        let n = 500;
        let mut acc = 0.0;
        let mut spread = Vec::new();
        for seed in 0..100u64 {
            let r = synth_roughness(2e-9, alpha, l, lmin, seed).unwrap();
            let s = delta_b_spectrum(&r, current, z).unwrap();
            let ms: f64 = (0..n).map(|i| s.field(i as f64 * window / n as f64).powi(2)).sum::<f64>() / n as f64;
            let rel = ms.sqrt() / s.b_ref;
            acc += rel * rel;
            spread.push(rel);
        }
        let ensemble = (acc / 100.0).sqrt();
        let r = synth_roughness(2e-9, alpha, l, lmin, 0).unwrap();
        let formula = corrugation_rms(&r, z, ModeSum::Exact).unwrap();
        assert!(!formula.height_warning);
        assert!((ensemble / formula.ratio - 1.0).abs() < 0.10, "α={alpha}: ensemble {ensemble} formula {}", formula.ratio);
        let lo = spread.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = spread.iter().cloned().fold(0.0, f64::max);
        assert!(hi > 1.05 * lo, "windowed rms should fluctuate between seeds");
    }
}
