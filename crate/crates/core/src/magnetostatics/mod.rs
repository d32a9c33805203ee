//! Closed-form wire fields: the crossing-wire barrier and the snake-wire
//! lattice.

pub mod bessel;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domain::constants::MU0;
use crate::domain::{AtomSpecies, TrapContext};
use crate::error::ensure_positive;
use crate::{Error, Result};

pub use bessel::{bessel_k0, bessel_k1, bessel_k1_approx, bessel_k2};

/// Potential of an atom at height `ctx.d` above a wire that crosses the
/// trap axis at x = 0:
/// V(x) = μA·B0 + (μA·μ0·I/2π)·z/(z² + x²).
pub fn x_wire_barrier(x: f64, ctx: &TrapContext, species: &AtomSpecies) -> Result<f64> {
    let z = ctx.d;
    if !(z > 0.0) {
        return Err(Error::param("d", "barrier is singular at z = 0"));
    }
    Ok(barrier_unchecked(x, z, ctx.current, ctx.b0, species.mu_a()))
}

#[inline]
pub(crate) fn barrier_unchecked(x: f64, z: f64, current: f64, b0: f64, mu_a: f64) -> f64 {
    mu_a * b0 + mu_a * MU0 * current / (2.0 * PI) * z / (z * z + x * x)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BarrierProfile {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub z: f64,
    pub current: f64,
    pub b0: f64,
    pub mu_a: f64,
}

impl BarrierProfile {
    /// Sample on `n` uniform points in [-half_span, half_span].
    pub fn sample(ctx: &TrapContext, species: &AtomSpecies, half_span: f64, n: usize) -> Result<Self> {
        ensure_positive("half_span", half_span)?;
        if n < 3 {
            return Err(Error::param("n", "need at least 3 samples"));
        }
        let x: Vec<f64> = (0..n)
            .map(|i| -half_span + 2.0 * half_span * i as f64 / (n - 1) as f64)
            .collect();
        let v = x
            .iter()
            .map(|&xi| x_wire_barrier(xi, ctx, species))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            x,
            v,
            z: ctx.d,
            current: ctx.current,
            b0: ctx.b0,
            mu_a: species.mu_a(),
        })
    }

    pub fn height(&self) -> f64 {
        self.mu_a * MU0 * self.current / (2.0 * PI * self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub wavelength: f64,
    pub delta_y_center: f64,
    pub current: f64,
    pub height: f64,
}

impl LatticeSpec {
    pub fn new(wavelength: f64, delta_y_center: f64, current: f64, height: f64) -> Result<Self> {
        ensure_positive("wavelength", wavelength)?;
        ensure_positive("z", height)?;
        if !(delta_y_center >= 0.0) || delta_y_center >= 0.1 * wavelength {
            return Err(Error::param(
                "delta_y_center",
                format!("edge modulation must be non-negative and below λ/10, got {delta_y_center:e}"),
            ));
        }
        if !(current >= 0.0) {
            return Err(Error::param("I", "must be non-negative"));
        }
        Ok(Self {
            wavelength,
            delta_y_center,
            current,
            height,
        })
    }

    pub fn k(&self) -> f64 {
        2.0 * PI / self.wavelength
    }
}

/// V0 = μA·μ0·I·k²·δy·K1(kz); the lattice potential is V0·cos(kx).
pub fn lattice_amplitude(spec: &LatticeSpec, species: &AtomSpecies) -> Result<f64> {
    let k = spec.k();
    Ok(species.mu_a() * MU0 * spec.current * k * k * spec.delta_y_center * bessel_k1(k * spec.height)?)
}

/// ω = sqrt(V0·k²/m).
pub fn lattice_trap_frequency(spec: &LatticeSpec, species: &AtomSpecies) -> Result<f64> {
    let v0 = lattice_amplitude(spec, species)?;
    if !(v0 > 0.0) {
        return Err(Error::NoSolution("lattice amplitude is not positive: no trapping".into()));
    }
    let k = spec.k();
    Ok((v0 * k * k / species.mass).sqrt())
}
