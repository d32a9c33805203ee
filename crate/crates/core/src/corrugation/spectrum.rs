use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma;
use super::roughness::{EdgeRoughness, RoughnessModel};
use crate::domain::constants::MU0;
use crate::error::ensure_positive;
use crate::magnetostatics::bessel::bessel_k1;
use crate::{par, Result};

/// δB_x along the trap axis, one-sided over k > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrugationSpectrum {
    pub k: Vec<f64>,
    /// (μ0 I / 2π)·i·k|k|·K1(|k|z)·δy_c(k), T.
    pub amplitude: Vec<Complex64>,
    /// Wire field μ0 I / (2π z) used as the reference.
    pub b_ref: f64,
    pub z: f64,
    pub length: f64,
}

impl CorrugationSpectrum {
    pub fn field(&self, x: f64) -> f64 {
        (0..self.k.len())
            .map(|i| 2.0 * (self.amplitude[i] * Complex64::from_polar(1.0, self.k[i] * x)).re)
            .sum()
    }

    /// δB_x on `n` uniform points covering one period [0, L).
    pub fn realize(&self, n: usize) -> Vec<(f64, f64)> {
        let h = self.length / n as f64;
        par::map_range(n, |i| {
            let x = i as f64 * h;
            (x, self.field(x))
        })
    }

    /// √(2Σ|δB_k|²), the rms of the real field over a period.
    pub fn spectral_rms(&self) -> f64 {
        (2.0 * self.amplitude.iter().map(|a| a.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// rms of a realisation with enough points to be exact (n > 2·modes).
    pub fn spatial_rms(&self, n: usize) -> f64 {
        let v = self.realize(n);
        (v.iter().map(|(_, b)| b * b).sum::<f64>() / n as f64).sqrt()
    }

    pub fn relative_rms(&self) -> f64 {
        self.spectral_rms() / self.b_ref
    }
}

pub(crate) fn mode_amplitude(k: f64, dy: Complex64, current: f64, z: f64) -> Result<Complex64> {
    let pre = MU0 * current / (2.0 * PI);
    Ok(Complex64::new(0.0, pre * k * k.abs() * bessel_k1(k.abs() * z)?) * dy)
}

/// δB_x spectrum at height z above a thin wire carrying `current`.
pub fn delta_b_spectrum(roughness: &RoughnessModel, current: f64, z: f64) -> Result<CorrugationSpectrum> {
    edge_spectrum(&roughness.edges(), roughness.length, current, z)
}

/// Same for arbitrary edges; only the centre line δy_c enters.
pub fn edge_spectrum(edges: &EdgeRoughness, length: f64, current: f64, z: f64) -> Result<CorrugationSpectrum> {
    ensure_positive("z", z)?;
    let amplitude = (0..edges.k.len())
        .map(|i| mode_amplitude(edges.k[i], 0.5 * (edges.plus[i] + edges.minus[i]), current, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrugationSpectrum {
        k: edges.k.clone(),
        amplitude,
        b_ref: MU0 * current / (2.0 * PI * z),
        z,
        length,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSum {
    /// Σ k^{−2α} over the actual grid.
    Exact,
    /// L/λ_min for α = 0 and L²/24 for α = 1 (infinite-band limits);
    /// other α fall back to the exact sum.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrugationRms {
    /// δB_rms / B_ref
    pub ratio: f64,
    pub a_alpha: f64,
    pub mode_sum: f64,
    /// z ≥ L/10: the long-wire assumption behind the formula is violated.
    pub height_warning: bool,
}

/// δB_rms/B ≈ A(α)·δy_rms/(2z)^{3/2−α} with
/// A(α)² = (L/π)/Σk^{−2α} · [1 + (π/4)(3−2α)]·Γ(3−2α).
pub fn corrugation_rms(roughness: &RoughnessModel, z: f64, sum: ModeSum) -> Result<CorrugationRms> {
    ensure_positive("z", z)?;
    let a = roughness.alpha;
    let l = roughness.length;
    let s = match sum {
        ModeSum::ClosedForm if a == 0.0 => l / roughness.lambda_min,
        ModeSum::ClosedForm if a == 1.0 => l * l / 24.0,
        _ => roughness.spectral_sum(),
    };
    let a2 = (l / PI) / s * (1.0 + PI / 4.0 * (3.0 - 2.0 * a)) * gamma(3.0 - 2.0 * a);
    let a_alpha = a2.sqrt();
    Ok(CorrugationRms {
        ratio: a_alpha * roughness.rms / (2.0 * z).powf(1.5 - a),
        a_alpha,
        mode_sum: s,
        height_warning: z >= l / 10.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrugation::synth_roughness;

    #[test]
    fn null_roughness_gives_zero() {
        let r = synth_roughness(0.0, 0.0, 10e-6, 0.1e-6, 0).unwrap();
        assert_eq!(corrugation_rms(&r, 1e-6, ModeSum::Exact).unwrap().ratio, 0.0);
        assert_eq!(delta_b_spectrum(&r, 1e-3, 1e-6).unwrap().spectral_rms(), 0.0);
    }

    #[test]
    fn linear_in_current() {
        let r = synth_roughness(2e-9, 0.5, 10e-6, 0.1e-6, 5).unwrap();
        let a = delta_b_spectrum(&r, 1e-3, 1e-6).unwrap();
        let b = delta_b_spectrum(&r, 2e-3, 1e-6).unwrap();
        for (x, y) in a.amplitude.iter().zip(&b.amplitude) {
            assert!((2.0 * x - y).norm() <= 1e-15 * y.norm());
        }
    }

    #[test]
    fn parseval() {
        let r = synth_roughness(2e-9, 1.0, 20e-6, 0.1e-6, 11).unwrap();
        let s = delta_b_spectrum(&r, 1e-3, 0.6e-6).unwrap();
        let spatial = s.spatial_rms(4 * r.k.len() + 1);
        assert!((spatial - s.spectral_rms()).abs() / s.spectral_rms() < 1e-6);
    }

    #[test]
    fn exponential_suppression() {
        let k = 2.0 * PI / 1e-6;
        let dy = Complex64::new(1e-9, 0.0);
        let (z1, z2) = (0.6e-6, 1.0e-6);
        let a1 = mode_amplitude(k, dy, 1e-3, z1).unwrap().norm();
        let a2 = mode_amplitude(k, dy, 1e-3, z2).unwrap().norm();
        let exact = bessel_k1(k * z2).unwrap() / bessel_k1(k * z1).unwrap();
        assert!((a2 / a1 / exact - 1.0).abs() < 1e-12);
        // leading large-argument behaviour: e^{-kΔz} with the √(z1/z2) prefactor
        let e = (z1 / z2).sqrt() * (-k * (z2 - z1)).exp();
        assert!(k * z1 > 3.0);
        assert!(((a2 / a1) / e - 1.0).abs() < 0.1);
    }

    #[test]
    fn formula_tracks_exact_sum_for_long_wires() {
        for alpha in [0.0, 1.0] {
            let r = synth_roughness(2e-9, alpha, 100e-6, 0.1e-6, 1).unwrap();
            for z in [0.3e-6, 0.6e-6, 1e-6] {
                let f = corrugation_rms(&r, z, ModeSum::Exact).unwrap().ratio;
                let e = delta_b_spectrum(&r, 1e-3, z).unwrap().relative_rms();
                assert!((f / e - 1.0).abs() < 0.05, "α={alpha} z={z}: {f} vs {e}");
            }
        }
    }

    #[test]
    fn height_warning() {
        let r = synth_roughness(2e-9, 1.0, 0.8e-6, 0.1e-6, 1).unwrap();
        assert!(corrugation_rms(&r, 0.6e-6, ModeSum::Exact).unwrap().height_warning);
        let r = synth_roughness(2e-9, 1.0, 100e-6, 0.1e-6, 1).unwrap();
        assert!(!corrugation_rms(&r, 0.6e-6, ModeSum::Exact).unwrap().height_warning);
    }
}
