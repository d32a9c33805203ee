use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::domain::constants::KB;
use crate::domain::units::{parse_unit, Dimension};
use crate::{Error, Result};

/// A configuration value: a bare number in the parameter's display unit,
/// a string with an explicit unit ("0.5 um", "40 uA"), or a choice label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Number(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Kind {
    Quantity {
        dimension: Dimension,
        unit: &'static str,
        /// internal = SI / scale (temperatures are kept in kelvin)
        scale: f64,
        default: f64,
    },
    Choice {
        options: &'static [&'static str],
        default: &'static str,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub doc: &'static str,
}

const fn q(name: &'static str, dimension: Dimension, unit: &'static str, default: f64, doc: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: Kind::Quantity {
            dimension,
            unit,
            scale: 1.0,
            default,
        },
        doc,
    }
}

const fn c(name: &'static str, options: &'static [&'static str], default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: Kind::Choice { options, default },
        doc,
    }
}

use Dimension::*;

pub const SCHEMA: &[ParamSpec] = &[
    q("d", Length, "um", 1e-6, "atom height above the top of the wire"),
    q("I", Current, "mA", 1e-3, "wire current"),
    q("B0", MagneticField, "G", 1e-4, "Ioffe field at the trap bottom"),
    q("mu", Energy, "uK", KB * 1e-6, "atom energy above the guide bottom, or chemical potential"),
    q("trapFrequency", Frequency, "Hz", 100.0, "harmonic trap frequency (all axes) for heating"),
    q("axialFrequency", Frequency, "Hz", 100.0, "axial frequency of the side guide"),
    q("N", Dimensionless, "1", 1.0, "atom number"),
    q("lambda", Length, "um", 1e-6, "lattice period"),
    q("eta", Dimensionless, "1", 2.0, "resolution parameter"),
    q("deltaY", Length, "nm", 0.0, "edge modulation of the lattice wire; 0 selects 0.05·lambda"),
    q("pFrom", Dimensionless, "1", 1e-3, "initial tunneling probability"),
    q("pTo", Dimensionless, "1", 0.1, "final tunneling probability"),
    q("w", Length, "nm", 50e-9, "wire width"),
    q("h", Length, "nm", 50e-9, "wire height"),
    q("L", Length, "mm", 1e-3, "wire length"),
    q("side", Length, "nm", 0.0, "square cross-section; overrides w and h when positive"),
    ParamSpec {
        name: "T",
        kind: Kind::Quantity {
            dimension: Energy,
            unit: "K",
            scale: KB,
            default: 300.0,
        },
        doc: "wire temperature",
    },
    q("rho", Resistivity, "uOhm cm", 2.21e-8, "bulk resistivity of the wire"),
    c("resistivityModel", &["bulk", "fs"], "bulk", "bulk resistivity or Fuchs-Sondheimer size correction"),
    q("meanFreePath", Length, "nm", 40e-9, "electron mean free path for the size correction"),
    q("specularity", Dimensionless, "1", 0.0, "specular fraction of surface scattering"),
    c("conductivity", &["isotropic", "quasi1d", "layered"], "isotropic", "conductivity tensor model"),
    q("anisotropy", Dimensionless, "1", 1.0, "conductivity ratio along/across"),
    q("transition", Frequency, "Hz", 0.0, "transition frequency for the skin-depth check"),
    q("separation", Length, "um", 1e-6, "separation for spatial decoherence (along y)"),
    q("rms", Length, "nm", 2e-9, "rms centre-line roughness"),
    q("alpha", Dimensionless, "1", 0.0, "roughness spectral exponent"),
    q("lambdaMin", Length, "nm", 100e-9, "shortest roughness wavelength"),
    q("roughLength", Length, "um", 0.8e-6, "longest roughness wavelength (periodic length)"),
    c("modeSum", &["exact", "closed"], "exact", "mode sum in the corrugation formula"),
    c("cpSources", &["combined", "wire", "surface", "none"], "combined", "Casimir-Polder sources"),
    q("cpScale", Dimensionless, "1", 1.0, "scale factor on the Casimir-Polder potential"),
    q("gateTime", Time, "ms", 1e-3, "gate duration for the figure of merit"),
    q("nx", Dimensionless, "1", 21.0, "tunneling columns along x"),
    q("ny", Dimensionless, "1", 21.0, "tunneling columns along y"),
    q("nz", Dimensionless, "1", 3000.0, "samples per tunneling column"),
    q("span", Length, "um", 5e-6, "half-span of the barrier profile"),
    q("samples", Dimensionless, "1", 201.0, "points in the barrier profile"),
];

pub fn spec(name: &str) -> Option<&'static ParamSpec> {
    SCHEMA.iter().find(|s| s.name == name)
}

fn split_quantity(s: &str) -> Option<(f64, &str)> {
    let t = s.trim();
    // longest numeric prefix, so "1e-6 m" and "40uA" both split correctly
    (1..=t.len())
        .rev()
        .filter(|&i| t.is_char_boundary(i))
        .find_map(|i| t[..i].trim().parse::<f64>().ok().map(|v| (v, t[i..].trim())))
}

/// Internal value of a parameter (SI, temperatures in K).
pub fn to_internal(spec: &ParamSpec, value: &ParamValue) -> Result<ParamInternal> {
    let bad = |why: String| Error::Config(format!("parameter `{}`: {why}", spec.name));
    // every quantity in the schema is a size, rate, count or magnitude
    let checked = |v: f64| {
        if v < 0.0 {
            Err(bad(format!("must not be negative, got {v}")))
        } else {
            Ok(ParamInternal::Number(v))
        }
    };
    match (spec.kind, value) {
        (Kind::Quantity { unit, scale, .. }, ParamValue::Number(v)) => {
            if !v.is_finite() {
                return Err(bad("must be finite".into()));
            }
            checked(v * parse_unit(unit)?.si / scale)
        }
        (Kind::Quantity { dimension, scale, .. }, ParamValue::Text(s)) => {
            let (v, u) = split_quantity(s).ok_or_else(|| bad(format!("cannot read `{s}` as a number with a unit")))?;
            let unit = parse_unit(u).map_err(|_| bad(format!("unknown unit `{u}`")))?;
            if unit.dimension != dimension {
                return Err(bad(format!("unit `{u}` has the wrong dimension")));
            }
            if !v.is_finite() {
                return Err(bad("must be finite".into()));
            }
            checked(v * unit.si / scale)
        }
        (Kind::Choice { options, .. }, ParamValue::Text(s)) => {
            if options.contains(&s.as_str()) {
                Ok(ParamInternal::Choice(s.clone()))
            } else {
                Err(bad(format!("`{s}` is not one of {options:?}")))
            }
        }
        (Kind::Choice { options, .. }, ParamValue::Number(_)) => Err(bad(format!("expected one of {options:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamInternal {
    Number(f64),
    Choice(String),
}

/// Resolved parameter set with schema defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<&'static str, ParamInternal>,
}

impl Default for Params {
    fn default() -> Self {
        let values = SCHEMA
            .iter()
            .map(|s| {
                let v = match s.kind {
                    Kind::Quantity { default, .. } => ParamInternal::Number(default),
                    Kind::Choice { default, .. } => ParamInternal::Choice(default.to_string()),
                };
                (s.name, v)
            })
            .collect();
        Self { values }
    }
}

impl Params {
    pub fn from_map(map: &BTreeMap<String, ParamValue>) -> Result<Self> {
        let mut p = Self::default();
        for (k, v) in map {
            p.set(k, v)?;
        }
        Ok(p)
    }

    pub fn set(&mut self, name: &str, value: &ParamValue) -> Result<()> {
        let s = spec(name).ok_or_else(|| Error::Config(format!("unknown parameter `{name}`")))?;
        self.values.insert(s.name, to_internal(s, value)?);
        Ok(())
    }

    /// Set a quantity directly in internal units.
    pub fn set_internal(&mut self, name: &str, value: f64) -> Result<()> {
        let s = spec(name).ok_or_else(|| Error::Config(format!("unknown parameter `{name}`")))?;
        self.values.insert(s.name, ParamInternal::Number(value));
        Ok(())
    }

    pub fn get(&self, name: &str) -> f64 {
        match self.values.get(name) {
            Some(ParamInternal::Number(v)) => *v,
            _ => panic!("`{name}` is not a numeric parameter"),
        }
    }

    pub fn choice(&self, name: &str) -> &str {
        match self.values.get(name) {
            Some(ParamInternal::Choice(v)) => v,
            _ => panic!("`{name}` is not a choice parameter"),
        }
    }

    pub fn count(&self, name: &'static str) -> Result<usize> {
        let v = self.get(name);
        if v >= 1.0 && v.fract() == 0.0 && v < 1e9 {
            Ok(v as usize)
        } else {
            Err(Error::Config(format!("parameter `{name}` must be a positive integer, got {v}")))
        }
    }
}

/// Internal value to display unit.
pub fn to_display(spec: &ParamSpec, v: f64) -> f64 {
    match spec.kind {
        Kind::Quantity { unit, scale, .. } => v * scale / parse_unit(unit).map(|u| u.si).unwrap_or(1.0),
        Kind::Choice { .. } => v,
    }
}
