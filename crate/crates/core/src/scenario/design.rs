use serde::{Deserialize, Serialize};

use super::channels::{conductivity, context, corrugation, geometry, side_guide, column_grid};
use super::params::Params;
use crate::domain::{AtomSpecies, ConductivityTensor, TrapContext, WireGeometry};
use crate::thermal_noise::{gate_ops_figure_of_merit, spin_decoherence_rate, spin_flip_rate};
use crate::tunneling::{surface_tunneling_rate, thomas_fermi_density};
use crate::{Error, Result};

pub const GATE_OPS_THRESHOLD: f64 = 1e4;
pub const CORRUGATION_THRESHOLD: f64 = 1e-2;

/// Everything needed to judge a chip: the resolved parameter set plus the
/// derived wire and conductor.
#[derive(Debug, Clone)]
pub struct ChipDesign {
    pub params: Params,
    pub geom: WireGeometry,
    pub conductivity: ConductivityTensor,
    pub context: TrapContext,
    pub seed: u64,
}

impl ChipDesign {
    pub fn from_params(p: &Params, seed: u64) -> Result<Self> {
        let geom = geometry(p)?;
        Ok(Self {
            conductivity: conductivity(p, &geom)?,
            context: context(p)?,
            geom,
            params: p.clone(),
            seed,
        })
    }

    /// 50×50 nm gold nanowire 0.75 μm below the atoms.
    pub fn conclusion() -> Self {
        Self::from_params(&conclusion_params(), 0).expect("built-in design is valid")
    }

    /// Same trap above a 10 μm gold slab wire at 1 μm.
    pub fn slab_comparator() -> Self {
        let mut p = conclusion_params();
        p.set_internal("side", 10e-6).unwrap();
        p.set_internal("d", 1e-6).unwrap();
        p.set("resistivityModel", &"bulk".into()).unwrap();
        Self::from_params(&p, 0).expect("built-in design is valid")
    }
}

pub fn conclusion_params() -> Params {
    let mut p = Params::default();
    for (k, v) in [
        ("side", 50e-9),
        ("d", 0.75e-6),
        ("I", 40e-6),
        ("B0", 1e-5),
        ("axialFrequency", 100.0),
        ("N", 1000.0),
        ("T", 300.0),
        ("rms", 2e-9),
        ("alpha", 0.0),
        ("lambdaMin", 100e-9),
        ("roughLength", 0.8e-6),
        ("gateTime", 1e-3),
    ] {
        p.set_internal(k, v).unwrap();
    }
    p.set("resistivityModel", &"fs".into()).unwrap();
    p
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail { reasons: Vec<String> },
    Indeterminate { cause: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail { .. } => "FAIL",
            Verdict::Indeterminate { .. } => "INDETERMINATE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub gate_time: f64,
    pub spin_flip_rate: Option<f64>,
    pub spin_decoherence_rate: Option<f64>,
    pub tunnel_rate: Option<f64>,
    /// δB_rms/B at the trap from the closed-form A(α) estimate.
    pub corrugation: Option<f64>,
    pub corrugation_height_warning: bool,
    pub total_rate: Option<f64>,
    pub coherence_time: Option<f64>,
    pub gate_ops: Option<f64>,
    pub verdict: Verdict,
}

/// Runs corrugation, spin flip, spin decoherence and surface tunneling for
/// the design and counts gates per coherence time. PASS needs at least 10⁴
/// gates and δB/B ≤ 10⁻².
pub fn design_report(design: &ChipDesign, gate_time: f64, species: &AtomSpecies) -> Result<DesignReport> {
    if !(gate_time > 0.0 && gate_time.is_finite()) {
        return Err(Error::Config(format!("gateTime must be positive, got {gate_time}")));
    }
    let p = &design.params;
    let (g, s, ctx) = (&design.geom, &design.conductivity, &design.context);
    let mut causes = Vec::new();
    let mut keep = |name: &str, r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            causes.push(format!("{name}: {e}"));
            None
        }
    };
    let flip = keep("spin flip", spin_flip_rate(ctx, s, g, species));
    let deco = keep("spin decoherence", spin_decoherence_rate(ctx, s, g, species));
    let tunnel = keep(
        "surface tunneling",
        (|| {
            let trap = side_guide(p, g, species)?;
            let dens = thomas_fermi_density(&trap.context(p.get("N"))?, species, species.scattering_length)?;
            Ok(surface_tunneling_rate(&trap, &dens, column_grid(p)?)?.rate)
        })(),
    );
    let corr = corrugation(p, design.seed);
    let (corrugation, warn) = match corr {
        Ok((_, formula, _, w)) => (Some(formula), w),
        Err(e) => {
            causes.push(format!("corrugation: {e}"));
            (None, false)
        }
    };
    let total = match (flip, deco, tunnel) {
        (Some(a), Some(b), Some(c)) => Some(a + b + c),
        _ => None,
    };
    let gate_ops = total.map(|t| gate_ops_figure_of_merit(t, gate_time));
    let verdict = if !causes.is_empty() {
        Verdict::Indeterminate { cause: causes.join("; ") }
    } else {
        let mut reasons = Vec::new();
        let ops = gate_ops.unwrap_or(0.0);
        if ops < GATE_OPS_THRESHOLD {
            reasons.push(format!("{ops:.3e} gate operations < 1e4"));
            // name every channel that fails the threshold on its own
            for (name, rate) in [("spin flip", flip), ("spin decoherence", deco), ("surface tunneling", tunnel)] {
                let alone = gate_ops_figure_of_merit(rate.unwrap_or(0.0), gate_time);
                if alone < GATE_OPS_THRESHOLD {
                    reasons.push(format!("{name}: {alone:.3e} gate operations"));
                }
            }
        }
        let c = corrugation.unwrap_or(f64::INFINITY);
        if c > CORRUGATION_THRESHOLD {
            reasons.push(format!("corrugation δB/B = {c:.3e} > 1e-2"));
        }
        if reasons.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail { reasons }
        }
    };
    Ok(DesignReport {
        gate_time,
        spin_flip_rate: flip,
        spin_decoherence_rate: deco,
        tunnel_rate: tunnel,
        corrugation,
        corrugation_height_warning: warn,
        total_rate: total,
        coherence_time: total.map(|t| 1.0 / t),
        gate_ops,
        verdict,
    })
}
