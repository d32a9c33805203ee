//! Size-dependent resistivity and current limits of nanofabricated wires.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domain::constants::MU0;
use crate::error::ensure_positive;
use crate::{Error, Result};

/// Electrical parameters of the wire material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WireElectrical {
    /// Bulk resistivity at the reference temperature, Ω·m.
    pub bulk_rho: f64,
    pub mean_free_path: f64,
    /// Fraction of specular surface reflections, 0..1.
    pub specularity: f64,
    /// Linear temperature coefficient of resistivity, 1/K.
    pub temp_coefficient: f64,
    pub reference_temperature: f64,
}

impl WireElectrical {
    /// Evaporated gold: p = 0 and a 40 nm mean free path are assumptions,
    /// not measured values.
    pub fn gold() -> Self {
        Self {
            bulk_rho: 2.21e-8,
            mean_free_path: 40e-9,
            specularity: 0.0,
            temp_coefficient: 3.4e-3,
            reference_temperature: 300.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("bulkRho", self.bulk_rho)?;
        ensure_positive("meanFreePath", self.mean_free_path)?;
        if !(0.0..=1.0).contains(&self.specularity) {
            return Err(Error::param("specularity", "must lie in [0, 1]"));
        }
        if !(self.temp_coefficient >= 0.0) {
            return Err(Error::param("tempCoefficient", "must be non-negative"));
        }
        Ok(())
    }

    /// Resistivity of a w × h wire at temperature `t`.
    pub fn rho(&self, w: f64, h: f64, t: f64) -> Result<f64> {
        let r = fs_resistivity(w, h, self)?;
        Ok(r * (1.0 + self.temp_coefficient * (t - self.reference_temperature)).max(1e-3))
    }
}

impl Default for WireElectrical {
    fn default() -> Self {
        Self::gold()
    }
}

/// Additive-surface Fuchs-Sondheimer form ρ_b(1 + (3/8)(1−p)ℓ(1/w + 1/h)).
pub fn fs_resistivity(w: f64, h: f64, el: &WireElectrical) -> Result<f64> {
    ensure_positive("w", w)?;
    ensure_positive("h", h)?;
    el.validate()?;
    Ok(el.bulk_rho * (1.0 + 0.375 * (1.0 - el.specularity) * el.mean_free_path * (1.0 / w + 1.0 / h)))
}

/// Anchor currents: 0.5 mA through a 20 nm wire, 5 mA through a 100 nm one.
pub const ANCHOR_SMALL: (f64, f64) = (20e-9, 0.5e-3);
pub const ANCHOR_LARGE: (f64, f64) = (100e-9, 5e-3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum SafeCurrentModel {
    /// J_max ∝ ρ_bulk/ρ(w, h). Scales as area and overshoots the large anchor
    /// by about 5×; kept for comparison.
    ConstantDensity,
    /// Fixed temperature rise with the heat spread into the substrate over
    /// a length ℓ: I² = C π w h/(ρ(T) ln(4ℓ/w)).
    #[default]
    HeatSpreading,
}

/// Spreading length for the heat-sink model.
pub const SPREADING_LENGTH: f64 = 1e-6;
/// Allowed temperature rise, K.
pub const ALLOWED_HEATING: f64 = 100.0;

fn shape_factor(w: f64, h: f64, el: &WireElectrical, model: SafeCurrentModel) -> Result<f64> {
    let rho = fs_resistivity(w, h, el)?;
    Ok(match model {
        SafeCurrentModel::ConstantDensity => w * h * el.bulk_rho / rho,
        SafeCurrentModel::HeatSpreading => {
            let hot = rho * (1.0 + el.temp_coefficient * ALLOWED_HEATING);
            let ln = (4.0 * SPREADING_LENGTH / w.min(SPREADING_LENGTH)).ln();
            (PI / ln * w * h / hot).sqrt()
        }
    })
}

/// Maximum safe current of a w × h wire, calibrated so the 20 nm wire
/// carries exactly 0.5 mA.
pub fn max_safe_current_with(w: f64, h: f64, el: &WireElectrical, model: SafeCurrentModel) -> Result<f64> {
    let (s, i) = ANCHOR_SMALL;
    let cal = i / shape_factor(s, s, el, model)?;
    Ok(cal * shape_factor(w, h, el, model)?)
}

pub fn max_safe_current(w: f64, h: f64, el: &WireElectrical) -> Result<f64> {
    max_safe_current_with(w, h, el, SafeCurrentModel::default())
}

/// Gradient μ0 I/(2π d²) of a thin wire at distance d.
fn gradient(i: f64, d: f64) -> f64 {
    MU0 * i / (2.0 * PI * d * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub d: f64,
    /// Gradient with w = h = d at the current density J of the d-sized wire.
    pub constant_j_gradient: f64,
    /// Same J with wire and distance halved.
    pub constant_j_gradient_half: f64,
    pub constant_j_ratio: f64,
    /// Gradients at the safe current of the d- and d/2-sized wires.
    pub safe_gradient: f64,
    pub safe_gradient_half: f64,
    pub safe_gain: f64,
}

/// With w = h = d and fixed J the gradient does not depend on d; allowing J
/// to follow the safe current shows what shrinking actually buys.
pub fn current_density_scaling_check(d: f64, el: &WireElectrical) -> Result<ScalingReport> {
    ensure_positive("d", d)?;
    let i = max_safe_current(d, d, el)?;
    let j = i / (d * d);
    let g = gradient(j * d * d, d);
    let gh = gradient(j * d * d / 4.0, d / 2.0);
    let ih = max_safe_current(d / 2.0, d / 2.0, el)?;
    let sg = gradient(i, d);
    let sgh = gradient(ih, d / 2.0);
    Ok(ScalingReport {
        d,
        constant_j_gradient: g,
        constant_j_gradient_half: gh,
        constant_j_ratio: gh / g,
        safe_gradient: sg,
        safe_gradient_half: sgh,
        safe_gain: sgh / sg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bulk_limit_and_scaling() {
        let el = WireElectrical::gold();
        let big = fs_resistivity(1.0, 1.0, &el).unwrap();
        assert!((big / el.bulk_rho - 1.0).abs() < 1e-6);
        let c1 = fs_resistivity(100e-9, 60e-9, &el).unwrap() / el.bulk_rho - 1.0;
        let c2 = fs_resistivity(50e-9, 30e-9, &el).unwrap() / el.bulk_rho - 1.0;
        assert!((c2 / c1 - 2.0).abs() < 1e-12);
        assert_eq!(fs_resistivity(30e-9, 70e-9, &el).unwrap(), fs_resistivity(70e-9, 30e-9, &el).unwrap());
    }

    #[test]
    fn fifty_nm_regression() {
        // frozen from the model: 1 + 0.375·40·(2/50) = 1.6, and 2.5 at 20 nm
        let el = WireElectrical::gold();
        let r = fs_resistivity(50e-9, 50e-9, &el).unwrap() / el.bulk_rho;
        assert!((r / 1.6 - 1.0).abs() < 0.3);
        let r = fs_resistivity(20e-9, 20e-9, &el).unwrap() / el.bulk_rho;
        assert!((r / 2.5 - 1.0).abs() < 0.3);
    }

    #[test]
    fn anchors() {
        let el = WireElectrical::gold();
        let i20 = max_safe_current(20e-9, 20e-9, &el).unwrap();
        assert!((i20 / 0.5e-3 - 1.0).abs() < 1e-12);
        let i100 = max_safe_current(100e-9, 100e-9, &el).unwrap();
        assert!((i100 / 5e-3 - 1.0).abs() < 0.25, "{i100}");
        let cj = max_safe_current_with(100e-9, 100e-9, &el, SafeCurrentModel::ConstantDensity).unwrap();
        assert!(cj > 15e-3);
    }

    #[test]
    fn monotone_in_area() {
        let el = WireElectrical::gold();
        let mut last = 0.0;
        for s in [10e-9, 20e-9, 50e-9, 100e-9, 200e-9, 1e-6] {
            let i = max_safe_current(s, s, &el).unwrap();
            assert!(i > last);
            last = i;
        }
    }

    #[test]
    fn scaling_report() {
        let el = WireElectrical::gold();
        let r = current_density_scaling_check(100e-9, &el).unwrap();
        assert!((r.constant_j_ratio - 1.0).abs() < 1e-12);
        assert!(r.safe_gain > 1.0);
        // linear in J
        assert!((gradient(2.0, 1e-6) / gradient(1.0, 1e-6) - 2.0).abs() < 1e-15);
        let i50 = max_safe_current(50e-9, 50e-9, &el).unwrap();
        let i200 = max_safe_current(200e-9, 200e-9, &el).unwrap();
        let g = gradient(i50, 50e-9) / gradient(i200, 200e-9);
        // regression freeze
        assert!((g / 2.804 - 1.0).abs() < 0.01, "{g}");
    }

    #[test]
    fn rejects_nonpositive() {
        let el = WireElectrical::gold();
        assert!(fs_resistivity(0.0, 1e-7, &el).is_err());
        assert!(max_safe_current(1e-7, -1.0, &el).is_err());
    }
}
