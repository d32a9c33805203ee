use serde::{Deserialize, Serialize};

use crate::domain::constants::MU0;
use crate::numerics::{integrate, QuadOptions};

pub const GOLD_RESISTIVITY_300K: f64 = 2.21e-8;
pub const SILVER_RESISTIVITY_300K: f64 = 1.59e-8;
pub const GOLD_DEBYE_TEMPERATURE: f64 = 170.0;
pub const SILVER_DEBYE_TEMPERATURE: f64 = 215.0;

/// δ = √(2/(σ μ0 ω)).
pub fn skin_depth(sigma: f64, omega: f64) -> f64 {
    (2.0 / (sigma * MU0 * omega)).sqrt()
}

/// Bloch-Grüneisen phonon resistivity, scaled to a given value at 300 K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochGruneisen {
    pub debye_temperature: f64,
    pub resistivity_300k: f64,
}

fn bg_integral(t: f64, theta: f64) -> f64 {
    let upper = theta / t;
    let f = |x: f64| {
        if x < 1e-8 {
            x.powi(3)
        } else {
            let em = x.exp_m1();
            x.powi(5) / (em * (-(-x).exp_m1()))
        }
    };
    let i = integrate(f, 0.0, upper, QuadOptions::rel(1e-12)).unwrap_or(f64::NAN);
    (t / theta).powi(5) * i
}

impl BlochGruneisen {
    pub fn gold() -> Self {
        Self {
            debye_temperature: GOLD_DEBYE_TEMPERATURE,
            resistivity_300k: GOLD_RESISTIVITY_300K,
        }
    }

    pub fn silver() -> Self {
        Self {
            debye_temperature: SILVER_DEBYE_TEMPERATURE,
            resistivity_300k: SILVER_RESISTIVITY_300K,
        }
    }

    pub fn phonon_resistivity(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.resistivity_300k * bg_integral(t, self.debye_temperature) / bg_integral(300.0, self.debye_temperature)
    }
}

/// (T/ρ(T)) relative to gold at 300 K, with ρ = ρ0 + ρ_ph(T). Noise power
/// scales with this ratio at fixed geometry.
pub fn alloy_noise_ratio(t: f64, rho0: f64, debye_temperature: f64, rho_ref: f64) -> f64 {
    let bg = BlochGruneisen {
        debye_temperature,
        resistivity_300k: rho_ref,
    };
    let rho = rho0 + bg.phonon_resistivity(t);
    (t / rho) / (300.0 / GOLD_RESISTIVITY_300K)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn skin_depths() {
        let au = skin_depth(1.0 / GOLD_RESISTIVITY_300K, 2.0 * PI * 1e6);
        assert!((au / 70e-6 - 1.0).abs() < 0.15, "{au}");
        // graphite, ρ ~ 1e-5 Ω m across the planes
        let c = skin_depth(1e5, 2.0 * PI * 1e6);
        assert!(c > 0.3e-3 && c < 3e-3);
        assert!((skin_depth(1e7, 4.0) / skin_depth(1e7, 1.0) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn calibration_and_limits() {
        let au = BlochGruneisen::gold();
        assert!((au.phonon_resistivity(300.0) - GOLD_RESISTIVITY_300K).abs() < 1e-20);
        assert!((alloy_noise_ratio(300.0, 0.0, 170.0, GOLD_RESISTIVITY_300K) - 1.0).abs() < 1e-12);
        // cooling a pure metal raises the noise
        assert!(alloy_noise_ratio(20.0, 0.0, 170.0, GOLD_RESISTIVITY_300K) > 10.0);
        // dirty metal: noise vanishes with T
        assert!(alloy_noise_ratio(0.1, 1e-7, 170.0, GOLD_RESISTIVITY_300K) < 1e-3);
    }

    #[test]
    fn silver_gold_alloy_reduction() {
        let r = alloy_noise_ratio(4.2, GOLD_RESISTIVITY_300K, SILVER_DEBYE_TEMPERATURE, SILVER_RESISTIVITY_300K);
        let reduction = 1.0 / r;
        assert!((reduction / 70.0 - 1.0).abs() < 0.1, "{reduction}");
    }
}
