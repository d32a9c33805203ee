use serde::{Deserialize, Serialize};

use super::constants::{HBAR, KB};
use crate::error::{ensure_finite, ensure_positive};
use crate::{Error, Result};

/// Operating point of a trap above a wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapContext {
    /// Atom height above the wire's top surface, m.
    pub d: f64,
    pub current: f64,
    pub b0: f64,
    /// Transition angular frequency for the noise spectra (0 = quasi-static).
    pub omega0f: f64,
    pub trap_frequencies: [f64; 3],
    /// Chemical potential, or the kinetic energy of a single atom, J.
    pub mu: f64,
    pub n_atoms: f64,
}

impl TrapContext {
    pub fn new(d: f64, current: f64, b0: f64) -> Result<Self> {
        ensure_positive("d", d)?;
        ensure_finite("I", current)?;
        if current < 0.0 {
            return Err(Error::param("I", "must be non-negative"));
        }
        if !(b0 >= 0.0) {
            return Err(Error::param("B0", "must be non-negative"));
        }
        Ok(Self {
            d,
            current,
            b0,
            omega0f: 0.0,
            trap_frequencies: [2.0 * std::f64::consts::PI * 100.0; 3],
            mu: KB * 1e-6,
            n_atoms: 1.0,
        })
    }

    pub fn with_energy(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_trap_frequencies(mut self, f: [f64; 3]) -> Self {
        self.trap_frequencies = f;
        self
    }

    pub fn with_atoms(mut self, n: f64) -> Self {
        self.n_atoms = n;
        self
    }

    pub fn with_transition(mut self, omega: f64) -> Self {
        self.omega0f = omega;
        self
    }

    pub fn with_height(mut self, d: f64) -> Self {
        self.d = d;
        self
    }

    pub fn with_current(mut self, i: f64) -> Self {
        self.current = i;
        self
    }

    pub fn require_trap_frequencies(&self) -> Result<()> {
        if self.trap_frequencies.iter().all(|w| *w > 0.0 && w.is_finite()) {
            Ok(())
        } else {
            Err(Error::param("trapFrequencies", "must be positive"))
        }
    }

    /// Harmonic-oscillator length along axis `i`.
    pub fn oscillator_length(&self, mass: f64, i: usize) -> f64 {
        (HBAR / (mass * self.trap_frequencies[i])).sqrt()
    }
}
