use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::design::{design_report, ChipDesign};
use super::params::Params;
use super::table::{Cell, Column};
use crate::casimir_polder::{CpModel, CpSources};
use crate::corrugation::{corrugation_rms, delta_b_spectrum, synth_roughness, ModeSum};
use crate::domain::{AtomSpecies, ConductivityTensor, LayerStack, TrapContext, WireGeometry};
use crate::magnetostatics::{lattice_amplitude, BarrierProfile, LatticeSpec};
use crate::nanowire::{fs_resistivity, max_safe_current, WireElectrical};
use crate::thermal_noise::geometry::above_center;
use crate::thermal_noise::{
    geometry_factors, heating_rate, spatial_decoherence_rate, spin_decoherence_rate, spin_flip_rate,
    suppression_ratio, HeatingTransition,
};
use crate::tunneling::{
    current_sensitivity, resolution_height, resolution_height_with, surface_tunneling_rate, thomas_fermi_density,
    x_wire_tunneling, ColumnGrid, SideGuideTrap,
};
use crate::{Error, Result};

/// Quantities a scenario can evaluate at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Channel {
    Sensitivity,
    TunnelProbability,
    BarrierHeight,
    ResolutionHeight,
    LatticeAmplitude,
    Corrugation,
    SpinFlip,
    SpinDecoherence,
    SpatialDecoherence,
    Heating,
    GeometryFactors,
    SuppressionRatio,
    Cp,
    TunnelLifetime,
    Resistivity,
    SafeCurrent,
    GateOps,
}

const UK: f64 = 1.0 / (crate::domain::constants::KB * 1e-6);

impl Channel {
    pub fn columns(self) -> Vec<Column> {
        use Channel::*;
        let c = Column::si;
        match self {
            Sensitivity => vec![c("dI_over_I", "1")],
            TunnelProbability => vec![c("P", "1"), c("action", "1")],
            BarrierHeight => vec![c("V_barrier", "J").with_display("uK", UK)],
            ResolutionHeight => vec![c("d_res", "m").with_display("um", 1e6)],
            LatticeAmplitude => vec![c("V0", "J").with_display("uK", UK)],
            Corrugation => vec![
                c("dB_over_B", "1"),
                c("dB_over_B_modes", "1"),
                c("dB_over_B_peak", "1"),
                c("height_warning", "1"),
            ],
            SpinFlip => vec![c("spin_flip_rate", "1/s"), c("spin_flip_lifetime", "s")],
            SpinDecoherence => vec![c("spin_decoherence_rate", "1/s")],
            SpatialDecoherence => vec![c("spatial_decoherence_rate", "1/s")],
            Heating => vec![c("heating_x", "1/s"), c("heating_y", "1/s"), c("heating_z", "1/s")],
            GeometryFactors => vec![c("Xxx", "1/m"), c("Xyy", "1/m"), c("Xzz", "1/m")],
            SuppressionRatio => vec![c("suppression", "1")],
            Cp => vec![
                c("U_cp", "J").with_display("uK", UK),
                c("U_surface", "J").with_display("uK", UK),
                c("U_wire", "J").with_display("uK", UK),
                c("wire_fraction", "1"),
            ],
            TunnelLifetime => vec![c("tunnel_rate", "1/s"), c("tunnel_lifetime", "s"), c("barrier_free_columns", "1")],
            Resistivity => vec![c("rho", "Ohm m").with_display("uOhm cm", 1e8)],
            SafeCurrent => vec![c("I_max", "A").with_display("mA", 1e3)],
            GateOps => vec![c("gate_ops", "1"), c("coherence_time", "s"), c("verdict", "")],
        }
    }

    pub fn evaluate(self, p: &Params, seed: u64) -> Result<Vec<Cell>> {
        let sp = AtomSpecies::rb87();
        let num = |v: Vec<f64>| -> Vec<Cell> { v.into_iter().map(number).collect() };
        use Channel::*;
        Ok(match self {
            Sensitivity => num(vec![current_sensitivity(p.get("d"), p.get("pFrom"), p.get("pTo"), &context(p)?, &sp)?]),
            TunnelProbability => {
                let r = x_wire_tunneling(p.get("I"), &context(p)?, &sp)?;
                num(vec![r.probability, r.action])
            }
            BarrierHeight => {
                let b = BarrierProfile::sample(&context(p)?, &sp, p.get("span"), p.count("samples")?)?;
                num(vec![b.height()])
            }
            ResolutionHeight => {
                let (l, i, eta, dy) = (p.get("lambda"), p.get("I"), p.get("eta"), p.get("deltaY"));
                num(vec![if dy > 0.0 {
                    resolution_height_with(l, i, eta, dy, &sp)?
                } else {
                    resolution_height(l, i, eta, &sp)?
                }])
            }
            LatticeAmplitude => {
                let l = p.get("lambda");
                let dy = if p.get("deltaY") > 0.0 { p.get("deltaY") } else { 0.05 * l };
                num(vec![lattice_amplitude(&LatticeSpec::new(l, dy, p.get("I"), p.get("d"))?, &sp)?])
            }
            Corrugation => {
                let (modes, formula, peak, warn) = corrugation(p, seed)?;
                num(vec![formula, modes, peak, warn as u8 as f64])
            }
            SpinFlip => {
                let g = geometry(p)?;
                let r = spin_flip_rate(&context(p)?, &conductivity(p, &g)?, &g, &sp)?;
                num(vec![r, 1.0 / r])
            }
            SpinDecoherence => {
                let g = geometry(p)?;
                num(vec![spin_decoherence_rate(&context(p)?, &conductivity(p, &g)?, &g, &sp)?])
            }
            SpatialDecoherence => {
                let g = geometry(p)?;
                let sep = [0.0, p.get("separation"), 0.0];
                num(vec![spatial_decoherence_rate(&context(p)?, &conductivity(p, &g)?, &g, &sp, sep)?])
            }
            Heating => {
                let g = geometry(p)?;
                let (ctx, s) = (context(p)?, conductivity(p, &g)?);
                num((0..3)
                    .map(|a| heating_rate(&ctx, &s, &g, &sp, a, HeatingTransition::ZeroToOne))
                    .collect::<Result<Vec<_>>>()?)
            }
            GeometryFactors => {
                let g = geometry(p)?;
                let x = above_center(&g, p.get("d"));
                num(geometry_factors(x, x, &g)?.diag().to_vec())
            }
            SuppressionRatio => {
                let g = geometry(p)?;
                let x = above_center(&g, p.get("d"));
                num(vec![suppression_ratio(&conductivity(p, &g)?, &geometry_factors(x, x, &g)?)])
            }
            Cp => {
                let g = geometry(p)?;
                let v = cp_model(p, &g)?.evaluate(0.0, g.h + p.get("d"))?;
                let frac = if v.potential != 0.0 { v.wire / v.potential } else { 0.0 };
                num(vec![v.potential, v.surface, v.wire, frac])
            }
            TunnelLifetime => {
                let g = geometry(p)?;
                let trap = side_guide(p, &g, &sp)?;
                let dens = thomas_fermi_density(&trap.context(p.get("N"))?, &sp, sp.scattering_length)?;
                let r = surface_tunneling_rate(&trap, &dens, column_grid(p)?)?;
                num(vec![r.rate, r.lifetime, r.barrier_free as f64])
            }
            Resistivity => {
                let g = geometry(p)?;
                num(vec![resistivity(p, &g)?])
            }
            SafeCurrent => {
                let g = geometry(p)?;
                num(vec![max_safe_current(g.w, g.h, &electrical(p))?])
            }
            GateOps => {
                let r = design_report(&ChipDesign::from_params(p, seed)?, p.get("gateTime"), &sp)?;
                vec![
                    r.gate_ops.map(number).unwrap_or(Cell::Text("n/a".into())),
                    r.coherence_time.map(number).unwrap_or(Cell::Text("n/a".into())),
                    Cell::Text(r.verdict.label().into()),
                ]
            }
        })
    }
}

/// Finite values as numbers, infinities as text, NaN as an error cell.
pub fn number(v: f64) -> Cell {
    if v.is_finite() {
        Cell::Number(v)
    } else if v.is_nan() {
        Cell::Error { error: "not a number".into() }
    } else if v > 0.0 {
        Cell::Text("inf".into())
    } else {
        Cell::Text("-inf".into())
    }
}

pub fn geometry(p: &Params) -> Result<WireGeometry> {
    let s = p.get("side");
    if s > 0.0 {
        WireGeometry::new(s, s, p.get("L"))
    } else {
        WireGeometry::new(p.get("w"), p.get("h"), p.get("L"))
    }
}

pub fn electrical(p: &Params) -> WireElectrical {
    WireElectrical {
        bulk_rho: p.get("rho"),
        mean_free_path: p.get("meanFreePath"),
        specularity: p.get("specularity"),
        ..WireElectrical::gold()
    }
}

pub fn resistivity(p: &Params, g: &WireGeometry) -> Result<f64> {
    match p.choice("resistivityModel") {
        "fs" => fs_resistivity(g.w, g.h, &electrical(p)),
        _ => Ok(p.get("rho")),
    }
}

pub fn conductivity(p: &Params, g: &WireGeometry) -> Result<ConductivityTensor> {
    let sigma = 1.0 / resistivity(p, g)?;
    let (r, t) = (p.get("anisotropy"), p.get("T"));
    match p.choice("conductivity") {
        "quasi1d" => ConductivityTensor::quasi_1d(sigma, r, t),
        "layered" => ConductivityTensor::layered(sigma, r, t),
        _ => ConductivityTensor::isotropic(sigma, t),
    }
}

pub fn context(p: &Params) -> Result<TrapContext> {
    let f = 2.0 * PI * p.get("trapFrequency");
    Ok(TrapContext::new(p.get("d"), p.get("I"), p.get("B0"))?
        .with_energy(p.get("mu"))
        .with_trap_frequencies([f; 3])
        .with_transition(2.0 * PI * p.get("transition"))
        .with_atoms(p.get("N")))
}

pub fn cp_sources(p: &Params) -> CpSources {
    match p.choice("cpSources") {
        "wire" => CpSources::Wire,
        "surface" => CpSources::Surface,
        "none" => CpSources::None,
        _ => CpSources::Combined,
    }
}

pub fn cp_model(p: &Params, g: &WireGeometry) -> Result<CpModel> {
    let sp = AtomSpecies::rb87();
    Ok(CpModel::new(LayerStack::sio2_on_si(), Some(*g), sp.polarizability_volume)
        .with_sources(cp_sources(p))
        .with_scale(p.get("cpScale")))
}

pub fn side_guide(p: &Params, g: &WireGeometry, sp: &AtomSpecies) -> Result<SideGuideTrap> {
    SideGuideTrap::new(
        *g,
        p.get("I"),
        p.get("B0"),
        p.get("d"),
        2.0 * PI * p.get("axialFrequency"),
        sp,
        cp_model(p, g)?,
    )
}

pub fn column_grid(p: &Params) -> Result<ColumnGrid> {
    Ok(ColumnGrid {
        nx: p.count("nx")?,
        ny: p.count("ny")?,
        nz: p.count("nz")?,
    })
}

fn mode_sum(p: &Params) -> ModeSum {
    match p.choice("modeSum") {
        "closed" => ModeSum::ClosedForm,
        _ => ModeSum::Exact,
    }
}

/// (spectral δB/B, formula δB/B, peak |δB|/B of the seeded realisation,
/// height warning) at the trap, measured from the wire centre.
pub fn corrugation(p: &Params, seed: u64) -> Result<(f64, f64, f64, bool)> {
    let i = p.get("I");
    if !(i > 0.0) {
        return Err(Error::param("I", "corrugation is relative to the wire field; need I > 0"));
    }
    let g = geometry(p)?;
    let z = p.get("d") + g.h / 2.0;
    let r = synth_roughness(p.get("rms"), p.get("alpha"), p.get("roughLength"), p.get("lambdaMin"), seed)?;
    let s = delta_b_spectrum(&r, i, z)?;
    let f = corrugation_rms(&r, z, mode_sum(p))?;
    let n = 16 * r.k.len().max(4);
    let peak = s.realize(n).iter().fold(0.0f64, |m, (_, b)| m.max(b.abs())) / s.b_ref;
    Ok((s.relative_rms(), f.ratio, peak, f.height_warning))
}
