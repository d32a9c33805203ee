mod common;

use atomchip::domain::WireGeometry;
use atomchip::thermal_noise::geometry::above_center;
use atomchip::thermal_noise::geometry_factors;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn adaptive_agrees_with_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for cfg in 0..10 {
        let w = 10f64.powf(rng.random_range(-7.5..-5.5));
        let h = w * rng.random_range(0.3..2.0);
        let g = WireGeometry::new(w, h, 1e-2).unwrap();
        let d = 10f64.powf(rng.random_range(-6.7..-5.7));
        let p1 = [0.0, rng.random_range(-1.0..1.0) * w, h / 2.0 + d];
        let p2 = if cfg % 2 == 0 {
            p1
        } else {
            [rng.random_range(-1.0..1.0) * d, rng.random_range(-1.0..1.0) * w, h / 2.0 + d * rng.random_range(1.0..2.0)]
        };
        let x = geometry_factors(p1, p2, &g).unwrap();
        let (mc, sigma) = common::monte_carlo_x(p1, p2, w, h, x.x_extent, 10_000_000, 100 + cfg);
        let scale = x.diag().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..3 {
            for j in 0..3 {
                let diff = (x.x[i][j] - mc[i][j]).abs();
                // small floor for components that vanish by symmetry
                let tol = 3.0 * sigma[i][j] + 1e-9 * scale;
                worst = worst.max(diff / tol);
                assert!(diff <= tol, "config {cfg} X[{i}][{j}]: adaptive {} MC {} ± {}", x.x[i][j], mc[i][j], sigma[i][j]);
            }
        }
    }
    assert!(worst <= 1.0);
}

#[test]
fn adaptive_agrees_with_analytic_line_integral() {
    for (w, h, d, y0) in [(50e-9, 50e-9, 0.5e-6, 0.0), (2e-6, 1e-6, 1e-6, 0.3e-6), (10e-6, 2.15e-6, 5e-6, 0.0)] {
        let g = WireGeometry::new(w, h, 10.0).unwrap();
        let mut p = above_center(&g, d);
        p[1] = y0;
        let x = geometry_factors(p, p, &g).unwrap();
        let a = common::analytic_x_diagonal(p[1], p[2], w, h, 64);
        for i in 0..3 {
            assert!((x.diag()[i] / a[i] - 1.0).abs() < 1e-4, "w={w} component {i}: {} vs {}", x.diag()[i], a[i]);
        }
    }
}
