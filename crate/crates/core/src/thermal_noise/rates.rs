use serde::{Deserialize, Serialize};

use super::geometry::{above_center, geometry_factors, geometry_factors_with, QuadratureSettings};
use super::spectrum::{spectrum_from_factors, NoiseSpectrum};
use crate::domain::constants::HBAR;
use crate::domain::{AtomSpecies, ConductivityTensor, TrapContext, WireGeometry};
use crate::numerics::gauss_hermite;
use crate::{par, Error, Result};

const GH_NODES: usize = 8;

fn spectrum_at(p1: [f64; 3], p2: [f64; 3], ctx: &TrapContext, sigma: &ConductivityTensor, geom: &WireGeometry) -> Result<NoiseSpectrum> {
    let x = geometry_factors(p1, p2, geom)?;
    Ok(spectrum_from_factors(&x, ctx.omega0f, sigma))
}

/// Γ = μ⊥²(S_yy + S_zz)/ħ² for the trapped state, with the quantization
/// axis along the wire.
pub fn spin_flip_rate(ctx: &TrapContext, sigma: &ConductivityTensor, geom: &WireGeometry, species: &AtomSpecies) -> Result<f64> {
    let p = above_center(geom, ctx.d);
    let x = geometry_factors(p, p, geom)?;
    let off = x.off_diagonal_fraction();
    if off > 1e-3 {
        return Err(Error::Numerical(format!(
            "geometry tensor is not diagonal over the wire centre (off-diagonal fraction {off:.2e})"
        )));
    }
    let s = spectrum_from_factors(&x, ctx.omega0f, sigma);
    let mu = species.transverse_moment();
    Ok(mu * mu * (s.s[1][1] + s.s[2][2]) / (HBAR * HBAR))
}

/// Γ = Δμ² S_xx/(2ħ²) for the two qubit states.
pub fn spin_decoherence_rate(ctx: &TrapContext, sigma: &ConductivityTensor, geom: &WireGeometry, species: &AtomSpecies) -> Result<f64> {
    let p = above_center(geom, ctx.d);
    let s = spectrum_at(p, p, ctx, sigma, geom)?;
    let dmu = species.qubit_moment_difference();
    Ok(dmu * dmu * s.s[0][0] / (2.0 * HBAR * HBAR))
}

/// Decoherence of a superposition of two positions displaced by `separation`
/// from the trap centre: μ∥²(S11 + S22 − 2S12)/(2ħ²).
pub fn spatial_decoherence_rate(
    ctx: &TrapContext,
    sigma: &ConductivityTensor,
    geom: &WireGeometry,
    species: &AtomSpecies,
    separation: [f64; 3],
) -> Result<f64> {
    let c = above_center(geom, ctx.d);
    let p1 = [c[0] - separation[0] / 2.0, c[1] - separation[1] / 2.0, c[2] - separation[2] / 2.0];
    let p2 = [c[0] + separation[0] / 2.0, c[1] + separation[1] / 2.0, c[2] + separation[2] / 2.0];
    let s11 = spectrum_at(p1, p1, ctx, sigma, geom)?.s[0][0];
    let s22 = spectrum_at(p2, p2, ctx, sigma, geom)?.s[0][0];
    let s12 = spectrum_at(p1, p2, ctx, sigma, geom)?.s[0][0];
    let mu = species.mu_a();
    Ok(mu * mu * (s11 + s22 - 2.0 * s12).max(0.0) / (2.0 * HBAR * HBAR))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeatingTransition {
    ZeroToOne,
    ZeroToTwo,
}

impl HeatingTransition {
    fn order(self) -> usize {
        match self {
            Self::ZeroToOne => 1,
            Self::ZeroToTwo => 2,
        }
    }
}

fn hermite_poly(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let (mut a, mut b) = (1.0, 2.0 * x);
            for k in 1..n {
                let c = 2.0 * x * b - 2.0 * k as f64 * a;
                a = b;
                b = c;
            }
            b
        }
    }
}

/// Vibrational transition rate 0 → f along `axis` (0, 1, 2 = x, y, z) of a
/// harmonic trap, from the S_xx correlation sampled on a Gauss-Hermite grid.
pub fn heating_rate(
    ctx: &TrapContext,
    sigma: &ConductivityTensor,
    geom: &WireGeometry,
    species: &AtomSpecies,
    axis: usize,
    transition: HeatingTransition,
) -> Result<f64> {
    if axis > 2 {
        return Err(Error::param("axis", "must be 0, 1 or 2"));
    }
    ctx.require_trap_frequencies()?;
    let ell = ctx.oscillator_length(species.mass, axis);
    let f = transition.order();
    let (u, w) = gauss_hermite(GH_NODES);
    let c = above_center(geom, ctx.d);
    let at = |ui: f64| {
        let mut p = c;
        p[axis] += ell * ui;
        p
    };
    let n = u.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let settings = QuadratureSettings::default();
    let vals = par::try_map(&pairs, |&(i, j)| {
        geometry_factors_with(at(u[i]), at(u[j]), geom, settings).map(|x| spectrum_from_factors(&x, ctx.omega0f, sigma).s[0][0])
    })?;
    let mut sum = 0.0;
    for (&(i, j), s) in pairs.iter().zip(vals) {
        let t = w[i] * w[j] * hermite_poly(f, u[i]) * hermite_poly(f, u[j]) * s;
        sum += if i == j { t } else { 2.0 * t };
    }
    let norm = (1u64 << f) as f64 * (1..=f).product::<usize>() as f64 * std::f64::consts::PI;
    let mu = species.mu_a();
    Ok(mu * mu / (HBAR * HBAR) * sum / norm)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub spin_flip: f64,
    pub spin_decoherence: f64,
    /// 0→1 rates along x, y, z.
    pub heating: [f64; 3],
    pub lifetime: f64,
    pub warnings: Vec<String>,
}

impl RateReport {
    pub fn compute(ctx: &TrapContext, sigma: &ConductivityTensor, geom: &WireGeometry, species: &AtomSpecies) -> Result<Self> {
        let spin_flip = spin_flip_rate(ctx, sigma, geom, species)?;
        let spin_decoherence = spin_decoherence_rate(ctx, sigma, geom, species)?;
        let mut heating = [0.0; 3];
        for (a, h) in heating.iter_mut().enumerate() {
            *h = heating_rate(ctx, sigma, geom, species, a, HeatingTransition::ZeroToOne)?;
        }
        let p = above_center(geom, ctx.d);
        let warnings = spectrum_at(p, p, ctx, sigma, geom)?.warnings;
        Ok(Self {
            spin_flip,
            spin_decoherence,
            heating,
            lifetime: 1.0 / spin_flip,
            warnings,
        })
    }
}

/// Number of gates of duration `gate_time` that fit in one loss time.
pub fn gate_ops_figure_of_merit(rate: f64, gate_time: f64) -> f64 {
    1.0 / (rate * gate_time)
}
