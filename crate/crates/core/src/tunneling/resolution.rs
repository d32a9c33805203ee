//! Height up to which a snake-wire lattice still isolates its sites.

use crate::domain::constants::HBAR;
use crate::domain::AtomSpecies;
use crate::error::ensure_positive;
use crate::magnetostatics::{lattice_amplitude, LatticeSpec};
use crate::numerics::brent;
use crate::Result;

/// Edge modulation δy_center as a fraction of the lattice period, used when
/// none is given.
pub const DEFAULT_MODULATION_FRACTION: f64 = 0.05;

/// Largest d with V0(d) ≥ (η²/16)·ħ²k²/m, for δy = 0.05·λ.
pub fn resolution_height(wavelength: f64, current: f64, eta: f64, species: &AtomSpecies) -> Result<f64> {
    resolution_height_with(wavelength, current, eta, DEFAULT_MODULATION_FRACTION * wavelength, species)
}

pub fn resolution_height_with(
    wavelength: f64,
    current: f64,
    eta: f64,
    delta_y_center: f64,
    species: &AtomSpecies,
) -> Result<f64> {
    ensure_positive("wavelength", wavelength)?;
    ensure_positive("I", current)?;
    ensure_positive("eta", eta)?;
    let spec = |z: f64| LatticeSpec::new(wavelength, delta_y_center, current, z);
    let k = spec(wavelength)?.k();
    let need = eta * eta / 16.0 * HBAR * HBAR * k * k / species.mass;
    let excess = |z: f64| -> f64 {
        match spec(z).and_then(|s| lattice_amplitude(&s, species)) {
            Ok(v) => (v / need).ln(),
            Err(_) => f64::NAN,
        }
    };
    let lo = 1e-9 * wavelength;
    if excess(lo) <= 0.0 {
        return Ok(0.0);
    }
    let mut hi = wavelength;
    while excess(hi) > 0.0 {
        hi *= 2.0;
    }
    brent(excess, lo, hi, 1e-12 * wavelength, 300)
}
