#![allow(dead_code)]
//! Independent reference calculations used by the integration tests. None of
//! these share code with the library beyond plain constants.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub const HBAR: f64 = 1.054_571_817e-34;

/// Exact transmission |t|² through V(x) on [xl, xr] by complex Numerov
/// integration from the transmitted side. V must vanish at both ends.
pub fn numerov_transmission<F: Fn(f64) -> f64>(v: F, xl: f64, xr: f64, energy: f64, mass: f64, n: usize) -> f64 {
    let h = (xr - xl) / n as f64;
    let k0 = (2.0 * mass * energy).sqrt() / HBAR;
    let q = |x: f64| 2.0 * mass * (energy - v(x)) / (HBAR * HBAR);
    let f = |x: f64| 1.0 + h * h * q(x) / 12.0;
    let plane = |x: f64| Complex64::from_polar(1.0, k0 * x);
    let mut psi_next = plane(xr);
    let mut psi = plane(xr - h);
    for i in 2..=n {
        let x = xr - (i - 1) as f64 * h;
        let prev = (psi * 2.0 * (1.0 - 5.0 * h * h * q(x) / 12.0) - psi_next * f(x + h)) / f(x - h);
        psi_next = psi;
        psi = prev;
    }
    // psi at xl, psi_next at xl + h; split into e^{±ik0x}
    let (x0, x1) = (xl, xl + h);
    let (a0, b0) = (plane(x0), plane(-x0));
    let (a1, b1) = (plane(x1), plane(-x1));
    let det = a0 * b1 - a1 * b0;
    let a = (psi * b1 - psi_next * b0) / det;
    1.0 / a.norm_sqr()
}

/// X_ij by Monte Carlo: uniform over the cross-section, Cauchy importance
/// sampling along the wire truncated to ±`x_extent`. Returns (mean, σ).
pub fn monte_carlo_x(
    x1: [f64; 3],
    x2: [f64; 3],
    w: f64,
    h: f64,
    x_extent: f64,
    samples: usize,
    seed: u64,
) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xc = 0.5 * (x1[0] + x2[0]);
    let scale = (0.5 * (x1[2] + x2[2])).max((x1[0] - x2[0]).abs()).max(w.min(h));
    let (t_lo, t_hi) = (((-x_extent - xc) / scale).atan(), ((x_extent - xc) / scale).atan());
    let mut sum = [[0.0; 3]; 3];
    let mut sum2 = [[0.0; 3]; 3];
    for _ in 0..samples {
        let t = t_lo + (t_hi - t_lo) * rng.random::<f64>();
        let xp = xc + scale * t.tan();
        // density of xp: 1/((t_hi − t_lo)·scale·(1 + u²))
        let u = (xp - xc) / scale;
        let inv_pdf = (t_hi - t_lo) * scale * (1.0 + u * u) * w * h;
        let p = [xp, (rng.random::<f64>() - 0.5) * w, (rng.random::<f64>() - 0.5) * h];
        let r1 = [x1[0] - p[0], x1[1] - p[1], x1[2] - p[2]];
        let r2 = [x2[0] - p[0], x2[1] - p[1], x2[2] - p[2]];
        let n1: f64 = r1.iter().map(|a| a * a).sum::<f64>().sqrt();
        let n2: f64 = r2.iter().map(|a| a * a).sum::<f64>().sqrt();
        let c = 0.5 * inv_pdf / (n1.powi(3) * n2.powi(3));
        for i in 0..3 {
            for j in 0..3 {
                let v = c * r1[i] * r2[j];
                sum[i][j] += v;
                sum2[i][j] += v * v;
            }
        }
    }
    let n = samples as f64;
    let mut mean = [[0.0; 3]; 3];
    let mut sigma = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            mean[i][j] = sum[i][j] / n;
            sigma[i][j] = ((sum2[i][j] / n - mean[i][j].powi(2)) / (n - 1.0)).sqrt();
        }
    }
    (mean, sigma)
}

/// Composite Gauss-Legendre (10 points per panel) on a graded grid, for the
/// 2D cross-section integrals below.
fn gl10(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.148_874_338_981_631_2,
        0.433_395_394_129_247_2,
        0.679_409_568_299_024_4,
        0.865_063_366_688_984_5,
        0.973_906_528_517_171_7,
    ];
    const W: [f64; 5] = [
        0.295_524_224_714_752_9,
        0.269_266_719_309_996_4,
        0.219_086_362_515_982_0,
        0.149_451_349_150_580_6,
        0.066_671_344_308_688_1,
    ];
    let hp = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let m = a + (p as f64 + 0.5) * hp;
        for k in 0..5 {
            s += W[k] * (f(m + 0.5 * hp * X[k]) + f(m - 0.5 * hp * X[k]));
        }
    }
    0.5 * hp * s
}

/// Diagonal X for a point (y0, z0) relative to the centre of an infinitely
/// long w × h wire, with the x′ integral done in closed form.
pub fn analytic_x_diagonal(y0: f64, z0: f64, w: f64, h: f64, panels: usize) -> [f64; 3] {
    let comp = |c: usize| {
        let inner = |yp: f64| {
            let g = |zp: f64| {
                let (dy, dz) = (y0 - yp, z0 - zp);
                let r2 = dy * dy + dz * dz;
                let r = r2.sqrt();
                match c {
                    0 => 0.5 * PI / (8.0 * r2 * r),
                    1 => 0.5 * dy * dy * 3.0 * PI / (8.0 * r2 * r2 * r),
                    _ => 0.5 * dz * dz * 3.0 * PI / (8.0 * r2 * r2 * r),
                }
            };
            gl10(&g, -h / 2.0, h / 2.0, panels)
        };
        gl10(&inner, -w / 2.0, w / 2.0, panels)
    };
    [comp(0), comp(1), comp(2)]
}

/// K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt by the trapezoid rule, which
/// converges geometrically for this doubly-exponential integrand.
pub fn bessel_k_integral(nu: f64, x: f64) -> f64 {
    let t_max = (1.0 + 750.0 / x).acosh() + 1.0;
    let n = 20000;
    let h = t_max / n as f64;
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut s = 0.5 * (f(0.0) + f(t_max));
    for i in 1..n {
        s += f(i as f64 * h);
    }
    s * h
}
