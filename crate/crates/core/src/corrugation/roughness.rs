use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ensure_positive;
use crate::{Error, Result};

/// Power-law spectrum δy_c(k) = δy0 (k0/k)^α e^{iφ_k} on k = 2πn/L,
/// n = 1 .. L/λ_min.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoughnessModel {
    pub delta_y0: f64,
    /// Reference wavevector, the first grid point 2π/L.
    pub k0: f64,
    pub alpha: f64,
    pub length: f64,
    pub lambda_min: f64,
    pub seed: u64,
    pub k: Vec<f64>,
    pub phases: Vec<f64>,
    /// √(Σ|δy_c(k)|²)
    pub rms: f64,
}

impl RoughnessModel {
    pub fn amplitude(&self, i: usize) -> f64 {
        self.delta_y0 * (self.k0 / self.k[i]).powf(self.alpha)
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        (0..self.k.len())
            .map(|i| Complex64::from_polar(self.amplitude(i), self.phases[i]))
            .collect()
    }

    /// Both edges follow the centre line.
    pub fn edges(&self) -> EdgeRoughness {
        let c = self.coefficients();
        EdgeRoughness::new(self.k.clone(), c.clone(), c)
    }

    /// Centre-line displacement δy_c(x).
    pub fn center_line(&self, x: f64) -> f64 {
        self.edges().center(x)
    }

    pub fn spectral_sum(&self) -> f64 {
        self.k.iter().map(|k| k.powf(-2.0 * self.alpha)).sum()
    }
}

/// Builds the spectrum, scales δy0 so the model rms equals `rms_target`, and
/// draws phases from a ChaCha8 stream seeded with `seed`.
pub fn synth_roughness(rms_target: f64, alpha: f64, length: f64, lambda_min: f64, seed: u64) -> Result<RoughnessModel> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::param("alpha", format!("spectral exponent must be in [0, 1], got {alpha}")));
    }
    if !(rms_target >= 0.0) {
        return Err(Error::param("rms", "must be non-negative"));
    }
    ensure_positive("L", length)?;
    ensure_positive("lambda_min", lambda_min)?;
    let n = (length / lambda_min + 1e-9).floor() as usize;
    if n == 0 {
        return Err(Error::param("lambda_min", "no wavevectors: λ_min exceeds L"));
    }
    let k: Vec<f64> = (1..=n).map(|i| 2.0 * PI * i as f64 / length).collect();
    let k0 = k[0];
    let shape: f64 = k.iter().map(|ki| (k0 / ki).powf(2.0 * alpha)).sum();
    let delta_y0 = rms_target / shape.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phases = (0..n).map(|_| rng.random::<f64>() * 2.0 * PI).collect();
    Ok(RoughnessModel {
        delta_y0,
        k0,
        alpha,
        length,
        lambda_min,
        seed,
        k,
        phases,
        rms: rms_target,
    })
}

/// One-sided spectra of the two edge displacements and, optionally, of the
/// top and bottom surface displacements (y-independent).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRoughness {
    pub k: Vec<f64>,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
    pub top: Vec<Complex64>,
    pub bottom: Vec<Complex64>,
}

impl EdgeRoughness {
    pub fn new(k: Vec<f64>, plus: Vec<Complex64>, minus: Vec<Complex64>) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); k.len()];
        Self { k, plus, minus, top: z.clone(), bottom: z }
    }

    pub fn single_mode(k: f64, plus: Complex64, minus: Complex64) -> Self {
        Self::new(vec![k], vec![plus], vec![minus])
    }

    pub fn with_surfaces(mut self, top: Vec<Complex64>, bottom: Vec<Complex64>) -> Self {
        self.top = top;
        self.bottom = bottom;
        self
    }

    fn synth(&self, c: impl Fn(usize) -> Complex64, x: f64) -> f64 {
        (0..self.k.len())
            .map(|i| 2.0 * (c(i) * Complex64::from_polar(1.0, self.k[i] * x)).re)
            .sum()
    }

    pub fn center(&self, x: f64) -> f64 {
        self.synth(|i| 0.5 * (self.plus[i] + self.minus[i]), x)
    }

    pub fn plus_edge(&self, x: f64) -> f64 {
        self.synth(|i| self.plus[i], x)
    }

    pub fn minus_edge(&self, x: f64) -> f64 {
        self.synth(|i| self.minus[i], x)
    }

    pub fn k_max(&self) -> f64 {
        self.k.iter().cloned().fold(0.0, f64::max)
    }

    pub fn k_min(&self) -> f64 {
        self.k.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_roughness() {
        let r = synth_roughness(0.0, 0.5, 10e-6, 0.1e-6, 1).unwrap();
        assert!((0..r.k.len()).all(|i| r.amplitude(i) == 0.0));
    }

    #[test]
    fn white_spectrum_is_flat() {
        let r = synth_roughness(2e-9, 0.0, 0.8e-6, 0.1e-6, 3).unwrap();
        assert_eq!(r.k.len(), 8);
        let a0 = r.amplitude(0);
        assert!((0..8).all(|i| (r.amplitude(i) - a0).abs() < 1e-24));
    }

    #[test]
    fn rms_matches_target() {
        for alpha in [0.0, 0.3, 1.0] {
            let r = synth_roughness(2e-9, alpha, 20e-6, 0.1e-6, 7).unwrap();
            let s: f64 = (0..r.k.len()).map(|i| r.amplitude(i).powi(2)).sum();
            assert!((s.sqrt() - 2e-9).abs() < 1e-20);
            assert!(r.k.windows(2).all(|w| ((w[1] - w[0]) - 2.0 * PI / 20e-6).abs() < 1e-3));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = synth_roughness(2e-9, 1.0, 5e-6, 0.1e-6, 42).unwrap();
        let b = synth_roughness(2e-9, 1.0, 5e-6, 0.1e-6, 42).unwrap();
        let c = synth_roughness(2e-9, 1.0, 5e-6, 0.1e-6, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.phases, c.phases);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(synth_roughness(2e-9, 1.5, 5e-6, 0.1e-6, 0).is_err());
        assert!(synth_roughness(2e-9, 0.0, 0.05e-6, 0.1e-6, 0).is_err());
    }
}
