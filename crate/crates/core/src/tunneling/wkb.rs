use serde::{Deserialize, Serialize};

use crate::domain::constants::HBAR;
use crate::numerics::roots::brent;
use crate::numerics::spline::CubicSpline;
use crate::numerics::{integrate, QuadOptions};
use crate::{Error, Result};

const TURNING_TOL: f64 = 1e-10;
const ACTION_TOL: f64 = 1e-8;
/// Samples required strictly between the turning points of a sampled barrier.
pub const MIN_BARRIER_SAMPLES: usize = 50;

/// Outcome of one barrier encounter.
///
/// `action` is (1/ħ)∫√(2m(V−E)) dx between the turning points and
/// `probability` = exp(−action). The quantum-mechanical transmission of the
/// same barrier in the WKB limit is exp(−2·action), kept as `transmission`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TunnelResult {
    pub probability: f64,
    pub transmission: f64,
    pub turning_points: Option<(f64, f64)>,
    pub action: f64,
}

impl TunnelResult {
    pub fn over_barrier() -> Self {
        Self {
            probability: 1.0,
            transmission: 1.0,
            turning_points: None,
            action: 0.0,
        }
    }

    pub fn from_action(action: f64, turning_points: (f64, f64)) -> Self {
        Self {
            probability: (-action).exp(),
            transmission: (-2.0 * action).exp(),
            turning_points: Some(turning_points),
            action,
        }
    }
}

pub fn de_broglie_wavelength(energy: f64, mass: f64) -> f64 {
    2.0 * std::f64::consts::PI * HBAR / (2.0 * mass * energy).sqrt()
}

/// (1/ħ)∫√(2m(V−E)) dx over [x1, x2].
pub fn action_between<F: Fn(f64) -> f64>(v: F, x1: f64, x2: f64, energy: f64, mass: f64) -> Result<f64> {
    if x2 <= x1 {
        return Ok(0.0);
    }
    let s = integrate(
        |x| (2.0 * mass * (v(x) - energy)).max(0.0).sqrt(),
        x1,
        x2,
        // an absolute floor of 1e-12 in the action keeps vanishing barriers
        // from demanding relative accuracy on a zero integral
        QuadOptions {
            abs_tol: 1e-12 * HBAR,
            ..QuadOptions::rel(ACTION_TOL)
        },
    )?;
    Ok(s / HBAR)
}

/// Locate V = E on a bracket where V − E changes sign.
pub fn turning_point<F: Fn(f64) -> f64>(v: &F, a: f64, b: f64, energy: f64) -> Result<f64> {
    let tol = TURNING_TOL * a.abs().max(b.abs()).max((b - a).abs());
    brent(|x| v(x) - energy, a, b, tol, 500)
}

/// Barrier given as a function with a known maximum at `peak`, below E at
/// both `lo` and `hi` and monotone on each side.
pub fn wkb_function<F: Fn(f64) -> f64>(
    v: F,
    lo: f64,
    peak: f64,
    hi: f64,
    energy: f64,
    mass: f64,
) -> Result<TunnelResult> {
    if v(peak) <= energy {
        return Ok(TunnelResult::over_barrier());
    }
    if v(lo) >= energy || v(hi) >= energy {
        return Err(Error::param("domain", "barrier is not enclosed by the search interval"));
    }
    let x1 = turning_point(&v, lo, peak, energy)?;
    let x2 = turning_point(&v, peak, hi, energy)?;
    let a = action_between(&v, x1, x2, energy, mass)?;
    Ok(TunnelResult::from_action(a, (x1, x2)))
}

/// WKB through the highest barrier of a sampled potential. Between samples
/// the potential is a natural cubic spline.
pub fn wkb_probability(x: &[f64], v: &[f64], energy: f64, mass: f64) -> Result<TunnelResult> {
    if x.len() != v.len() {
        return Err(Error::param("samples", "x and V lengths differ"));
    }
    let (imax, vmax) = v
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    if v.len() < 3 || vmax <= energy {
        return Ok(TunnelResult::over_barrier());
    }
    let mut l = imax;
    while l > 0 && v[l] >= energy {
        l -= 1;
    }
    let mut r = imax;
    while r + 1 < v.len() && v[r] >= energy {
        r += 1;
    }
    if v[l] >= energy || v[r] >= energy {
        return Err(Error::param("samples", "barrier extends to the edge of the grid"));
    }
    let inside = r - l - 1;
    if inside < MIN_BARRIER_SAMPLES {
        return Err(Error::param(
            "samples",
            format!("barrier under-resolved: {inside} samples between turning points, need {MIN_BARRIER_SAMPLES}"),
        ));
    }
    let spline = CubicSpline::new(x.to_vec(), v.to_vec())?;
    let f = |t: f64| spline.eval(t);
    let x1 = turning_point(&f, x[l], x[l + 1], energy)?;
    let x2 = turning_point(&f, x[r - 1], x[r], energy)?;
    let a = action_between(&f, x1, x2, energy, mass)?;
    Ok(TunnelResult::from_action(a, (x1, x2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::constants::KB;
    use crate::domain::AtomSpecies;

    #[test]
    fn flat_potential_is_transparent() {
        let x: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let v = vec![1.0; 100];
        let r = wkb_probability(&x, &v, 2.0, 1.0).unwrap();
        assert_eq!(r.probability, 1.0);
        assert!(r.turning_points.is_none());
    }

    #[test]
    fn square_barrier() {
        // rounded-corner square barrier: edges narrow compared to the width
        let m = AtomSpecies::rb87().mass;
        let e = KB * 1e-6;
        let u = 2.0 * e;
        let a = 0.2e-6;
        let edge = 0.5e-9;
        let n = 4001;
        let x: Vec<f64> = (0..n).map(|i| -0.3e-6 + 0.6e-6 * i as f64 / (n - 1) as f64).collect();
        let v: Vec<f64> = x
            .iter()
            .map(|&x| {
                let s = 1.0 / (1.0 + ((x.abs() - a / 2.0) / edge).exp());
                u * s
            })
            .collect();
        let r = wkb_probability(&x, &v, e, m).unwrap();
        let exact = (-2.0 * a * (2.0 * m * (u - e)).sqrt() / HBAR).exp();
        assert!((r.transmission.ln() - exact.ln()).abs() / exact.ln().abs() < 0.01);
        assert!((r.probability * r.probability - r.transmission).abs() < 1e-15);
    }

    #[test]
    fn under_resolved_grid_rejected() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let v: Vec<f64> = x.iter().map(|&x| 5.0 - (x - 10.0).powi(2)).collect();
        assert!(wkb_probability(&x, &v, 1.0, 1.0).is_err());
    }

    #[test]
    fn de_broglie_scale() {
        let l = de_broglie_wavelength(KB * 1e-6, AtomSpecies::rb87().mass);
        assert!((l - 0.33e-6).abs() < 0.01e-6);
    }
}
