//! Loss of trapped atoms by tunneling through the magnetic barrier into the
//! Casimir-Polder well of the surface and wire.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::density::DensityProfile;
use super::wkb::{action_between, turning_point};
use crate::casimir_polder::CpModel;
use crate::domain::constants::{HBAR, MU0};
use crate::domain::{AtomSpecies, TrapContext, WireGeometry};
use crate::error::ensure_positive;
use crate::{par, Error, Result};

/// Potential energy along vertical columns above the chip.
///
/// Lateral coordinates are relative to the trap minimum; z is the height
/// above the substrate surface.
pub trait ColumnPotential: Sync {
    fn potential(&self, x: f64, y: f64, z: f64) -> f64;
    /// Lowest z above (x, y) that is outside material.
    fn floor(&self, x: f64, y: f64) -> f64;
    fn trap_height(&self) -> f64;
}

/// Side guide above a wire lying on the chip: wire field plus a transverse
/// bias that cancels it at the trap height, an axial Ioffe field B0, and a
/// harmonic axial confinement.
#[derive(Debug, Clone)]
pub struct SideGuideTrap {
    pub geom: WireGeometry,
    pub current: f64,
    pub b0: f64,
    /// Height of the trap above the top of the wire.
    pub d: f64,
    pub axial_frequency: f64,
    pub mu_a: f64,
    pub mass: f64,
    pub cp: CpModel,
}

impl SideGuideTrap {
    pub fn new(
        geom: WireGeometry,
        current: f64,
        b0: f64,
        d: f64,
        axial_frequency: f64,
        species: &AtomSpecies,
        cp: CpModel,
    ) -> Result<Self> {
        ensure_positive("I", current)?;
        ensure_positive("B0", b0)?;
        ensure_positive("d", d)?;
        ensure_positive("axial_frequency", axial_frequency)?;
        Ok(Self {
            geom,
            current,
            b0,
            d,
            axial_frequency,
            mu_a: species.mu_a().abs(),
            mass: species.mass,
            cp,
        })
    }

    /// Height of the equivalent line current (wire centre).
    fn axis(&self) -> f64 {
        self.geom.h / 2.0
    }

    pub fn bias_field(&self) -> f64 {
        MU0 * self.current / (2.0 * PI * (self.trap_height() - self.axis()))
    }

    pub fn gradient(&self) -> f64 {
        self.bias_field() / (self.trap_height() - self.axis())
    }

    /// Transverse frequency of the Ioffe-Pritchard guide, G·√(μA/(m·B0)).
    pub fn radial_frequency(&self) -> f64 {
        self.gradient() * (self.mu_a / (self.mass * self.b0)).sqrt()
    }

    pub fn context(&self, n_atoms: f64) -> Result<TrapContext> {
        let wr = self.radial_frequency();
        Ok(TrapContext::new(self.d, self.current, self.b0)?
            .with_trap_frequencies([self.axial_frequency, wr, wr])
            .with_atoms(n_atoms))
    }

    pub fn magnetic(&self, x: f64, y: f64, z: f64) -> f64 {
        let zr = z - self.axis();
        let rho2 = y * y + zr * zr;
        let c = MU0 * self.current / (2.0 * PI * rho2);
        let by = self.bias_field() - c * zr;
        let bz = c * y;
        self.mu_a * (self.b0 * self.b0 + by * by + bz * bz).sqrt()
            + 0.5 * self.mass * self.axial_frequency.powi(2) * x * x
    }
}

impl ColumnPotential for SideGuideTrap {
    fn potential(&self, x: f64, y: f64, z: f64) -> f64 {
        self.magnetic(x, y, z) + self.cp.potential(y, z)
    }

    fn floor(&self, _x: f64, y: f64) -> f64 {
        self.cp.floor(y)
    }

    fn trap_height(&self) -> f64 {
        self.geom.h + self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnGrid {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl Default for ColumnGrid {
    fn default() -> Self {
        Self { nx: 41, ny: 41, nz: 6000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceTunneling {
    pub rate: f64,
    pub lifetime: f64,
    /// Absolute energy of the atoms (trap-centre potential plus μ).
    pub energy: f64,
    pub columns: usize,
    pub populated: usize,
    /// Populated columns with no barrier between the cloud and the surface;
    /// each contributes its full attempt rate.
    pub barrier_free: usize,
    /// Smallest exp(−2∫κ) exponent over columns with a barrier.
    pub min_exponent: f64,
    /// Σ P ΔxΔy over the grid; should be close to one.
    pub weight_sum: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Column {
    rate: f64,
    weight: f64,
    populated: bool,
    barrier_free: bool,
    exponent: f64,
}

fn column<U: ColumnPotential>(
    u: &U,
    x: f64,
    y: f64,
    energy: f64,
    mass: f64,
    v_rms: f64,
    z_extent: f64,
    nz: usize,
) -> Result<Column> {
    let f = |z: f64| u.potential(x, y, z);
    let z0 = u.floor(x, y) + 1e-11;
    let zt = u.trap_height();
    let z_top = zt + 3.0 * z_extent + 0.2e-6;
    if z_top <= z0 {
        return Err(Error::param("trap", "trap lies below the surface"));
    }
    let dz = (z_top - z0) / (nz - 1) as f64;
    let zs: Vec<f64> = (0..nz).map(|i| z0 + dz * i as f64).collect();
    let us: Vec<f64> = zs.iter().map(|&z| f(z)).collect();
    let mut out = Column {
        exponent: f64::INFINITY,
        ..Column::default()
    };
    let z_search = zt - 2.0 * z_extent;
    let im = (0..nz)
        .filter(|&i| zs[i] > z_search)
        .min_by(|&a, &b| us[a].total_cmp(&us[b]))
        .ok_or_else(|| Error::Numerical("empty search window".into()))?;
    if us[im] >= energy {
        return Ok(out);
    }
    out.populated = true;
    let mut i = im;
    while i > 0 && us[i] < energy {
        i -= 1;
    }
    let (exponent, z_low) = if i == 0 && us[0] < energy {
        out.barrier_free = true;
        (0.0, zs[0])
    } else {
        let z2 = turning_point(&f, zs[i], zs[i + 1], energy)?;
        let mut j = i;
        while j > 0 && us[j] >= energy {
            j -= 1;
        }
        let z1 = if us[j] < energy {
            turning_point(&f, zs[j], zs[j + 1], energy)?
        } else {
            zs[0]
        };
        (2.0 * action_between(f, z1, z2, energy, mass)?, z2)
    };
    let mut k = im;
    while k + 1 < nz && us[k] < energy {
        k += 1;
    }
    let z3 = if us[k] >= energy {
        turning_point(&f, zs[k - 1], zs[k], energy)?
    } else {
        zs[k]
    };
    let l = z3 - z_low;
    if l <= 0.0 {
        return Ok(out);
    }
    let omega_r = v_rms / (2.0 * l);
    out.exponent = exponent;
    out.rate = omega_r * (-exponent).exp();
    Ok(out)
}

/// Γ = ∫∫ P(x,y)·ω_r(x,y)·exp(−2∫κ dz) dx dy over the cloud footprint.
///
/// ω_r = √⟨v_z²⟩ / 2L with L the width of the classically allowed region
/// in z and ⟨v_z²⟩ = (ħω_z/2 + 2μ/7)/m (the μ term only for a
/// Thomas-Fermi cloud).
pub fn surface_tunneling_rate<U: ColumnPotential>(
    u: &U,
    density: &DensityProfile,
    grid: ColumnGrid,
) -> Result<SurfaceTunneling> {
    if grid.nx < 2 || grid.ny < 2 || grid.nz < 100 {
        return Err(Error::param("grid", "need at least 2×2 columns and 100 z samples"));
    }
    let m = density.mass;
    let wz = density.frequencies[2];
    let tf = if density.is_thomas_fermi() { 2.0 / 7.0 * density.chemical_potential } else { 0.0 };
    let v_rms = ((0.5 * HBAR * wz + tf) / m).sqrt();
    let energy = u.potential(0.0, 0.0, u.trap_height()) + density.chemical_potential;
    let ext = density.extent();
    let (hx, hy) = (2.0 * ext[0] / grid.nx as f64, 2.0 * ext[1] / grid.ny as f64);
    let cols = par::map_range(grid.nx * grid.ny, |idx| -> Result<Column> {
        let x = -ext[0] + (idx / grid.ny) as f64 * hx + 0.5 * hx;
        let y = -ext[1] + (idx % grid.ny) as f64 * hy + 0.5 * hy;
        let p = density.column_weight(x, y);
        if p <= 0.0 {
            return Ok(Column { exponent: f64::INFINITY, ..Column::default() });
        }
        let mut c = column(u, x, y, energy, m, v_rms, ext[2], grid.nz)?;
        c.weight = p * hx * hy;
        c.rate *= c.weight;
        Ok(c)
    });
    let mut out = SurfaceTunneling {
        rate: 0.0,
        lifetime: f64::INFINITY,
        energy,
        columns: grid.nx * grid.ny,
        populated: 0,
        barrier_free: 0,
        min_exponent: f64::INFINITY,
        weight_sum: 0.0,
    };
    for c in cols {
        let c = c?;
        out.rate += c.rate;
        out.weight_sum += c.weight;
        out.populated += c.populated as usize;
        out.barrier_free += c.barrier_free as usize;
        if !c.barrier_free {
            out.min_exponent = out.min_exponent.min(c.exponent);
        }
    }
    if out.rate > 0.0 {
        out.lifetime = 1.0 / out.rate;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir_polder::CpSources;
    use crate::domain::LayerStack;
    use crate::tunneling::thomas_fermi_density;

    fn trap(d: f64, sources: CpSources, scale: f64) -> SideGuideTrap {
        let rb = AtomSpecies::rb87();
        let g = WireGeometry::square(50e-9, 1e-4).unwrap();
        let cp = CpModel::new(LayerStack::sio2_on_si(), Some(g), rb.polarizability_volume)
            .with_sources(sources)
            .with_scale(scale);
        SideGuideTrap::new(g, 40e-6, 1e-5, d, 2.0 * PI * 100.0, &rb, cp).unwrap()
    }

    fn lifetime(t: &SideGuideTrap) -> SurfaceTunneling {
        let rb = AtomSpecies::rb87();
        let dens = thomas_fermi_density(&t.context(1000.0).unwrap(), &rb, rb.scattering_length).unwrap();
        surface_tunneling_rate(t, &dens, ColumnGrid { nx: 21, ny: 21, nz: 3000 }).unwrap()
    }

    #[test]
    fn no_cp_is_stable() {
        let r = lifetime(&trap(0.5e-6, CpSources::None, 1.0));
        assert!(r.lifetime > 1e4, "{}", r.lifetime);
        assert!((r.weight_sum - 1.0).abs() < 0.02);
    }

    #[test]
    fn stronger_cp_loses_faster() {
        let mut prev = 0.0;
        for s in [0.5, 1.0, 2.0, 4.0] {
            let r = lifetime(&trap(0.55e-6, CpSources::Combined, s)).rate;
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn bias_cancels_at_trap() {
        let t = trap(0.5e-6, CpSources::None, 1.0);
        let zt = t.trap_height();
        let u0 = t.magnetic(0.0, 0.0, zt);
        assert!((u0 - t.mu_a * t.b0).abs() < 1e-12 * u0);
        assert!(t.magnetic(0.0, 0.0, zt + 10e-9) > u0);
        assert!(t.magnetic(0.0, 0.0, zt - 10e-9) > u0);
    }
}
