//! Retarded Casimir-Polder attraction from a layered substrate and a
//! cylindrical wire, combined additively.
//!
//! Coordinates: z is the height above the top of the substrate stack; the
//! wire sits on that surface, occupying |y| ≤ w/2, 0 ≤ z ≤ h, and for the
//! cylinder model is replaced by a cylinder of radius a = h/2 centred at
//! (y, z) = (0, a).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domain::constants::{C, HBAR};
use crate::domain::{LayerStack, WireGeometry};
use crate::{Error, Result};

/// Below this distance the retarded forms are outside their validity range.
pub const RETARDED_LIMIT: f64 = 100e-9;

/// ħ c α0 / 2π for a polarizability volume α0 (m³).
pub fn cp_prefactor(alpha_volume: f64) -> f64 {
    HBAR * C * alpha_volume / (2.0 * PI)
}

/// Thick-layer F for a dielectric constant; ε = ∞ gives the perfect
/// conductor value 3/4.
pub fn planar_f(eps: f64) -> f64 {
    if eps.is_infinite() {
        0.75
    } else {
        0.75 * (eps - 1.0) / (eps + 1.0)
    }
}

/// Each layer acts as a half-space starting at its own top surface, minus
/// the same half-space starting at its bottom; summing gives
/// U = -K Σ (F_i - F_{i-1}) / (z + depth_i)⁴.
pub fn planar_cp(z: f64, stack: &LayerStack, alpha_volume: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::InsideConductor(format!("z = {z:e} is not above the substrate")));
    }
    Ok(planar_cp_unchecked(z, stack, alpha_volume))
}

pub(crate) fn planar_cp_unchecked(z: f64, stack: &LayerStack, alpha_volume: f64) -> f64 {
    let k = cp_prefactor(alpha_volume);
    let mut depth = 0.0;
    let mut f_prev = 0.0;
    let mut u = 0.0;
    for layer in stack.layers() {
        let f = planar_f(layer.permittivity);
        u -= k * (f - f_prev) / (z + depth).powi(4);
        f_prev = f;
        if let Some(t) = layer.thickness {
            depth += t;
        }
    }
    u
}

const Q_LOG: f64 = 0.1;
const Q_LIN: f64 = 0.2;

fn f_log(q: f64) -> f64 {
    -2.0 / (3.0 * q.ln())
}

fn f_lin(q: f64) -> f64 {
    0.53 * q + 0.22
}

/// F(a/R) for a perfectly conducting cylinder.
///
/// The two published limiting forms are joined on [0.1, 0.2] by a cubic
/// Hermite segment whose end slopes satisfy the Fritsch-Carlson condition,
/// so F stays continuous and monotone across the seam. At R → a (q → 1)
/// the linear form is capped at the planar limit 3/4.
pub fn cylinder_f(q: f64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    if q <= Q_LOG {
        return f_log(q);
    }
    if q >= Q_LIN {
        return f_lin(q).min(0.75);
    }
    let (y0, y1) = (f_log(Q_LOG), f_lin(Q_LIN));
    let h = Q_LIN - Q_LOG;
    let secant = (y1 - y0) / h;
    let m1 = 0.53;
    let beta = m1 / secant;
    let lg_slope = 2.0 / (3.0 * Q_LOG * Q_LOG.ln().powi(2));
    let m0 = lg_slope.min(0.99 * (9.0 - beta * beta).max(0.0).sqrt() * secant);
    let t = (q - Q_LOG) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * m1
}

/// U = -K F(a/R) / (R - a)⁴ at distance R from the cylinder axis.
pub fn cylinder_cp(r: f64, a: f64, alpha_volume: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::param("a", "cylinder radius must be positive"));
    }
    if !(r > a) {
        return Err(Error::InsideConductor(format!("R = {r:e} is not outside radius {a:e}")));
    }
    Ok(-cp_prefactor(alpha_volume) * cylinder_f(a / r) / (r - a).powi(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CpSources {
    None,
    Surface,
    Wire,
    Combined,
}

impl CpSources {
    pub fn surface(self) -> bool {
        matches!(self, CpSources::Surface | CpSources::Combined)
    }
    pub fn wire(self) -> bool {
        matches!(self, CpSources::Wire | CpSources::Combined)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpValue {
    pub potential: f64,
    pub surface: f64,
    pub wire: f64,
    /// Dimensionless 𝓕 = -U·(2π/ħcα0)·z⁴ with z the height above the stack.
    pub calf: f64,
    /// False below [`RETARDED_LIMIT`] from the nearest source.
    pub retarded_valid: bool,
}

/// Substrate stack plus a wire on top of it.
#[derive(Debug, Clone, PartialEq)]
pub struct CpModel {
    pub stack: LayerStack,
    pub wire: Option<WireGeometry>,
    pub alpha_volume: f64,
    pub sources: CpSources,
    /// Multiplies every contribution; 1 for the physical model.
    pub scale: f64,
}

impl CpModel {
    pub fn new(stack: LayerStack, wire: Option<WireGeometry>, alpha_volume: f64) -> Self {
        Self {
            stack,
            wire,
            alpha_volume,
            sources: CpSources::Combined,
            scale: 1.0,
        }
    }

    pub fn with_sources(mut self, s: CpSources) -> Self {
        self.sources = s;
        self
    }

    pub fn with_scale(mut self, s: f64) -> Self {
        self.scale = s;
        self
    }

    fn inside(&self, y: f64, z: f64) -> bool {
        if z <= 0.0 {
            return true;
        }
        if let Some(g) = &self.wire {
            let a = g.cylinder_radius();
            if (y.abs() <= g.w / 2.0 && z <= g.h) || y.hypot(z - a) <= a {
                return true;
            }
        }
        false
    }

    /// Lowest reachable z above lateral position y.
    pub fn floor(&self, y: f64) -> f64 {
        match &self.wire {
            None => 0.0,
            Some(g) => {
                let a = g.cylinder_radius();
                let rect = if y.abs() <= g.w / 2.0 { g.h } else { 0.0 };
                let cyl = if y.abs() < a { a + (a * a - y * y).sqrt() } else { 0.0 };
                rect.max(cyl)
            }
        }
    }

    pub fn evaluate(&self, y: f64, z: f64) -> Result<CpValue> {
        if self.inside(y, z) {
            return Err(Error::InsideConductor(format!("(y, z) = ({y:e}, {z:e})")));
        }
        Ok(self.evaluate_unchecked(y, z))
    }

    pub(crate) fn evaluate_unchecked(&self, y: f64, z: f64) -> CpValue {
        let mut nearest = z;
        let surface = if self.sources.surface() {
            self.scale * planar_cp_unchecked(z, &self.stack, self.alpha_volume)
        } else {
            0.0
        };
        let wire = match (&self.wire, self.sources.wire()) {
            (Some(g), true) => {
                let a = g.cylinder_radius();
                let r = y.hypot(z - a);
                nearest = nearest.min(r - a);
                if r > a {
                    -self.scale * cp_prefactor(self.alpha_volume) * cylinder_f(a / r) / (r - a).powi(4)
                } else {
                    f64::NEG_INFINITY
                }
            }
            _ => 0.0,
        };
        let potential = surface + wire;
        CpValue {
            potential,
            surface,
            wire,
            calf: -potential / cp_prefactor(self.alpha_volume) * z.powi(4),
            retarded_valid: nearest >= RETARDED_LIMIT,
        }
    }

    pub fn potential(&self, y: f64, z: f64) -> f64 {
        self.evaluate_unchecked(y, z).potential
    }
}

/// Planar stack plus cylinder wire at (x, y, z); x does not enter (the wire
/// is long).
pub fn combined_cp(
    pos: [f64; 3],
    geom: &WireGeometry,
    stack: &LayerStack,
    alpha_volume: f64,
) -> Result<f64> {
    let model = CpModel::new(stack.clone(), Some(*geom), alpha_volume);
    Ok(model.evaluate(pos[1], pos[2])?.potential)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedBarrier {
    pub z: Vec<f64>,
    pub potential: Vec<f64>,
    /// Barrier maximum minus the trap minimum (J); 0 if no trap well.
    pub barrier_height: f64,
    pub barrier_position: Option<f64>,
    /// Where the total potential crosses `mu` below and above the barrier
    /// maximum (linear interpolation between samples).
    pub turning_points: Option<(f64, f64)>,
    pub survives: bool,
}

/// Add CP to a magnetic potential sampled along z at fixed y, and inspect
/// the barrier between the trap (the highest local minimum) and the
/// surface. `mu` is the absolute energy of the atoms.
pub fn cp_modified_barrier(
    z: &[f64],
    magnetic: &[f64],
    cp: &CpModel,
    y: f64,
    mu: f64,
) -> Result<ModifiedBarrier> {
    if z.len() != magnetic.len() || z.len() < 3 {
        return Err(Error::param("samples", "grid and potential must match and have ≥ 3 points"));
    }
    if z.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::param("z", "grid must be increasing"));
    }
    let potential: Vec<f64> = z
        .iter()
        .zip(magnetic)
        .map(|(&zi, &u)| {
            if cp.inside(y, zi) {
                f64::NEG_INFINITY
            } else {
                u + cp.potential(y, zi)
            }
        })
        .collect();
    let n = potential.len();
    // the trap well: highest-z interior local minimum
    let well = (1..n - 1)
        .rev()
        .find(|&i| potential[i] <= potential[i - 1] && potential[i] <= potential[i + 1]);
    let mut out = ModifiedBarrier {
        z: z.to_vec(),
        potential,
        barrier_height: 0.0,
        barrier_position: None,
        turning_points: None,
        survives: false,
    };
    let Some(iw) = well else {
        return Ok(out);
    };
    let u = &out.potential;
    let (ib, ub) = (0..iw)
        .filter(|&i| u[i].is_finite())
        .map(|i| (i, u[i]))
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    if !ub.is_finite() {
        return Ok(out);
    }
    out.barrier_height = ub - u[iw];
    out.barrier_position = Some(z[ib]);
    out.survives = ub > mu;
    if out.survives {
        let cross = |i: usize, j: usize| {
            let (a, b) = (u[i] - mu, u[j] - mu);
            if a.is_finite() && b.is_finite() && a != b {
                z[i] + (z[j] - z[i]) * a / (a - b)
            } else {
                z[j]
            }
        };
        let mut lo = ib;
        while lo > 0 && u[lo - 1] > mu {
            lo -= 1;
        }
        let z1 = if lo == 0 { z[0] } else { cross(lo - 1, lo) };
        let mut hi = ib;
        while hi < iw && u[hi + 1] > mu {
            hi += 1;
        }
        let z2 = cross(hi, hi + 1);
        out.turning_points = Some((z1, z2));
    }
    Ok(out)
}
