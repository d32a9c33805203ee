//! Density weights for the surface-loss average: Thomas-Fermi for many
//! atoms, the harmonic ground state for one.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domain::constants::HBAR;
use crate::domain::{AtomSpecies, TrapContext};
use crate::error::ensure_positive;
use crate::numerics::{brent, integrate, QuadOptions};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DensityShape {
    /// Inverted parabola with radii R_i and coupling g.
    ThomasFermi { radii: [f64; 3], coupling: f64 },
    /// Harmonic ground state; `lengths` are √(ħ/mω_i).
    Gaussian { lengths: [f64; 3] },
}

/// Density around the trap centre (coordinates relative to the minimum).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub shape: DensityShape,
    pub n_atoms: f64,
    /// Energy above the trap bottom: μ for Thomas-Fermi, the zero-point
    /// energy for a single atom.
    pub chemical_potential: f64,
    pub frequencies: [f64; 3],
    pub mass: f64,
}

impl DensityProfile {
    pub fn is_thomas_fermi(&self) -> bool {
        matches!(self.shape, DensityShape::ThomasFermi { .. })
    }

    pub fn density(&self, p: [f64; 3]) -> f64 {
        match self.shape {
            DensityShape::ThomasFermi { coupling, .. } => {
                let v: f64 = (0..3)
                    .map(|i| 0.5 * self.mass * self.frequencies[i].powi(2) * p[i] * p[i])
                    .sum();
                (self.chemical_potential - v).max(0.0) / coupling
            }
            DensityShape::Gaussian { lengths } => {
                let norm = self.n_atoms / (PI.powf(1.5) * lengths[0] * lengths[1] * lengths[2]);
                norm * (-(0..3).map(|i| (p[i] / lengths[i]).powi(2)).sum::<f64>()).exp()
            }
        }
    }

    /// (1/N)∫n dz at (x, y); integrates to one over the plane.
    pub fn column_weight(&self, x: f64, y: f64) -> f64 {
        match self.shape {
            DensityShape::ThomasFermi { radii, .. } => {
                let q = 1.0 - (x / radii[0]).powi(2) - (y / radii[1]).powi(2);
                if q <= 0.0 {
                    0.0
                } else {
                    5.0 / (2.0 * PI * radii[0] * radii[1]) * q.powf(1.5)
                }
            }
            DensityShape::Gaussian { lengths } => {
                (-(x / lengths[0]).powi(2) - (y / lengths[1]).powi(2)).exp() / (PI * lengths[0] * lengths[1])
            }
        }
    }

    /// Half-extent of the cloud along each axis (TF radius, or 4 lengths).
    pub fn extent(&self) -> [f64; 3] {
        match self.shape {
            DensityShape::ThomasFermi { radii, .. } => radii,
            DensityShape::Gaussian { lengths } => lengths.map(|l| 4.0 * l),
        }
    }

    /// Midpoint-rule ∫n d³x on an n³ grid spanning the cloud.
    pub fn grid_norm(&self, n: usize) -> f64 {
        let e = self.extent();
        let h: Vec<f64> = e.iter().map(|r| 2.0 * r / n as f64).collect();
        let c = |i: usize, a: usize| -e[a] + (i as f64 + 0.5) * h[a];
        let sum = crate::par::sum_range(n, |i| {
            let mut s = 0.0;
            for j in 0..n {
                for k in 0..n {
                    s += self.density([c(i, 0), c(j, 1), c(k, 2)]);
                }
            }
            s
        });
        sum * h[0] * h[1] * h[2]
    }
}

/// Thomas-Fermi profile normalised to `ctx.n_atoms`; for one atom the
/// harmonic ground state.
pub fn thomas_fermi_density(ctx: &TrapContext, species: &AtomSpecies, scattering_length: f64) -> Result<DensityProfile> {
    ctx.require_trap_frequencies()?;
    let n = ctx.n_atoms;
    if !(n >= 1.0) {
        return Err(Error::param("N", "need at least one atom"));
    }
    let m = species.mass;
    let w = ctx.trap_frequencies;
    if n == 1.0 {
        return Ok(DensityProfile {
            shape: DensityShape::Gaussian {
                lengths: w.map(|wi| (HBAR / (m * wi)).sqrt()),
            },
            n_atoms: 1.0,
            chemical_potential: 0.5 * HBAR * (w[0] + w[1] + w[2]),
            frequencies: w,
            mass: m,
        });
    }
    ensure_positive("scattering_length", scattering_length)?;
    let g = 4.0 * PI * HBAR * HBAR * scattering_length / m;
    // In u_i = x_i·√(mω_i²/2) the potential is |u|² and the profile is
    // spherical: N(μ) = J·4π/g ∫₀^√μ (μ − u²) u² du, J the Jacobian.
    let jac: f64 = w.iter().map(|wi| (2.0 / (m * wi * wi)).sqrt()).product();
    let count = |mu: f64| -> Result<f64> {
        let r = mu.sqrt();
        let s = integrate(|u| (mu - u * u) * u * u, 0.0, r, QuadOptions::rel(1e-12))?;
        Ok(jac * 4.0 * PI / g * s)
    };
    let scale = HBAR * (w[0] * w[1] * w[2]).cbrt();
    let mut hi = scale;
    while count(hi)? < n {
        hi *= 2.0;
    }
    let mu = brent(|mu| count(mu).map(|c| c / n - 1.0).unwrap_or(f64::NAN), 0.0, hi, 1e-15 * hi, 300)?;
    Ok(DensityProfile {
        shape: DensityShape::ThomasFermi {
            radii: w.map(|wi| (2.0 * mu / (m * wi * wi)).sqrt()),
            coupling: g,
        },
        n_atoms: n,
        chemical_potential: mu,
        frequencies: w,
        mass: m,
    })
}
