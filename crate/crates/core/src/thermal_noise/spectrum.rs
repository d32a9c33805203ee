use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::{geometry_factors, GeometryFactors};
use super::materials::skin_depth;
use crate::domain::constants::{KB, MU0};
use crate::domain::{ConductivityTensor, WireGeometry};
use crate::Result;

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// B_ij = Σ ε_ilm ε_jnm σ_mm X_ln.
pub fn b_full(sigma: &ConductivityTensor, x: &GeometryFactors) -> [[f64; 3]; 3] {
    let s = sigma.diag();
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for l in 0..3 {
                for n in 0..3 {
                    for m in 0..3 {
                        let e = levi_civita(i, l, m) * levi_civita(j, n, m);
                        if e != 0.0 {
                            acc += e * s[m] * x.x[l][n];
                        }
                    }
                }
            }
            b[i][j] = acc;
        }
    }
    b
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BDiagonal {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    /// Ỹ_ii = B_ii / σxx
    pub y_tilde: [f64; 3],
}

/// B_xx = σzz Xyy + σyy Xzz, B_yy = σzz Xxx + σxx Xzz, B_zz = σyy Xxx + σxx Xyy.
pub fn b_tensor(sigma: &ConductivityTensor, x: &GeometryFactors) -> BDiagonal {
    let (sx, sy, sz) = (sigma.sxx, sigma.syy, sigma.szz);
    let (xx, yy, zz) = (x.xx(), x.yy(), x.zz());
    let b = [sz * yy + sy * zz, sz * xx + sx * zz, sy * xx + sx * yy];
    BDiagonal {
        xx: b[0],
        yy: b[1],
        zz: b[2],
        y_tilde: b.map(|v| v / sx),
    }
}

/// B_xx(aniso)/B_xx(iso at σxx).
pub fn suppression_ratio(sigma: &ConductivityTensor, x: &GeometryFactors) -> f64 {
    // ratios first, so an isotropic tensor gives exactly 1
    ((sigma.szz / sigma.sxx) * x.yy() + (sigma.syy / sigma.sxx) * x.zz()) / (x.yy() + x.zz())
}

/// Cross-spectral density S_B^{ij}(x1, x2; ω) in T²·s, low-frequency limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpectrum {
    pub s: [[f64; 3]; 3],
    pub temperature: f64,
    pub conductivity: ConductivityTensor,
    pub omega: f64,
    pub skin_depth: Option<f64>,
    pub warnings: Vec<String>,
}

impl NoiseSpectrum {
    pub fn parallel(&self) -> f64 {
        self.s[0][0]
    }
}

/// k_B T μ0² / 4π², equal to k_B T/(4π² ε0² c⁴).
pub fn prefactor(temperature: f64) -> f64 {
    KB * temperature * MU0 * MU0 / (4.0 * PI * PI)
}

pub fn spectrum_from_factors(x: &GeometryFactors, omega: f64, sigma: &ConductivityTensor) -> NoiseSpectrum {
    let b = b_full(sigma, x);
    let pre = prefactor(sigma.temperature);
    let mut warnings = Vec::new();
    let mut delta = None;
    if omega > 0.0 {
        let s_max = sigma.sxx.max(sigma.syy).max(sigma.szz);
        let dl = skin_depth(s_max, omega);
        delta = Some(dl);
        let d = x.geom.transverse_distance(x.x1).max(x.geom.transverse_distance(x.x2));
        let scale = d.max(x.geom.h);
        if dl <= 10.0 * scale {
            warnings.push(format!(
                "skin depth {dl:.3e} m is not ≫ max(d, h) = {scale:.3e} m; quasi-static noise overestimates"
            ));
        }
    }
    NoiseSpectrum {
        s: b.map(|r| r.map(|v| pre * v)),
        temperature: sigma.temperature,
        conductivity: *sigma,
        omega,
        skin_depth: delta,
        warnings,
    }
}

pub fn power_spectrum(
    x1: [f64; 3],
    x2: [f64; 3],
    omega: f64,
    sigma: &ConductivityTensor,
    geom: &WireGeometry,
) -> Result<NoiseSpectrum> {
    let x = geometry_factors(x1, x2, geom)?;
    Ok(spectrum_from_factors(&x, omega, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake(xx: f64, yy: f64, zz: f64) -> GeometryFactors {
        let mut x = [[0.0; 3]; 3];
        x[0][0] = xx;
        x[1][1] = yy;
        x[2][2] = zz;
        GeometryFactors {
            x,
            x1: [0.0, 0.0, 1e-6],
            x2: [0.0, 0.0, 1e-6],
            geom: WireGeometry::square(1e-7, 1e-3).unwrap(),
            x_extent: 0.0,
            error_estimate: 0.0,
        }
    }

    #[test]
    fn full_tensor_matches_diagonal_rows() {
        let x = fake(1.0, 2.0, 3.0);
        let s = ConductivityTensor::new(5.0, 7.0, 11.0, 300.0).unwrap();
        let b = b_full(&s, &x);
        let d = b_tensor(&s, &x);
        assert_eq!(b[0][0], d.xx);
        assert_eq!(b[1][1], d.yy);
        assert_eq!(b[2][2], d.zz);
        assert_eq!(b[0][1], 0.0);
        assert_eq!(d.y_tilde[0], d.xx / 5.0);
    }

    #[test]
    fn isotropic_and_limits() {
        let x = fake(1.0, 2.0, 3.0);
        let iso = ConductivityTensor::isotropic(4.0, 300.0).unwrap();
        assert_eq!(b_tensor(&iso, &x).xx, 4.0 * (2.0 + 3.0));
        assert_eq!(suppression_ratio(&iso, &x), 1.0);
        let q = ConductivityTensor::quasi_1d(1.0, 1e3, 300.0).unwrap();
        assert!((suppression_ratio(&q, &x) - 1e-3).abs() < 1e-15);
        let l = ConductivityTensor::layered(1.0, 1e9, 300.0).unwrap();
        assert!((suppression_ratio(&l, &x) - 1.0 / (1.0 + 2.0 / 3.0)).abs() < 1e-8);
    }

    #[test]
    fn linear_in_temperature() {
        let x = fake(1.0, 2.0, 3.0);
        let a = spectrum_from_factors(&x, 0.0, &ConductivityTensor::isotropic(4.5e7, 300.0).unwrap());
        let b = spectrum_from_factors(&x, 0.0, &ConductivityTensor::isotropic(4.5e7, 600.0).unwrap());
        assert!((b.s[1][1] / a.s[1][1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn skin_depth_warning() {
        let x = fake(1.0, 2.0, 3.0);
        let s = ConductivityTensor::isotropic(4.5e7, 300.0).unwrap();
        assert!(spectrum_from_factors(&x, 2.0 * PI * 1e6, &s).warnings.is_empty());
        assert!(!spectrum_from_factors(&x, 2.0 * PI * 1e13, &s).warnings.is_empty());
    }
}
