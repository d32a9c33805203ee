//! Display-unit conversions. Internally everything is SI.

use std::f64::consts::PI;

use super::constants::{EPS0, KB};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Current,
    /// Temperatures convert to energies through k_B.
    Energy,
    MagneticField,
    Polarizability,
    Time,
    Frequency,
    Resistivity,
    Dimensionless,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    pub name: &'static str,
    pub dimension: Dimension,
    /// Value of one unit in the SI unit of its dimension.
    pub si: f64,
}

const fn u(name: &'static str, dimension: Dimension, si: f64) -> Unit {
    Unit { name, dimension, si }
}

use Dimension::*;

const UNITS: &[(&[&str], Unit)] = &[
    (&["m"], u("m", Length, 1.0)),
    (&["mm"], u("mm", Length, 1e-3)),
    (&["um", "μm", "µm"], u("um", Length, 1e-6)),
    (&["nm"], u("nm", Length, 1e-9)),
    (&["A"], u("A", Current, 1.0)),
    (&["mA"], u("mA", Current, 1e-3)),
    (&["uA", "μA", "µA"], u("uA", Current, 1e-6)),
    (&["J"], u("J", Energy, 1.0)),
    (&["K"], u("K", Energy, KB)),
    (&["mK"], u("mK", Energy, KB * 1e-3)),
    (&["uK", "μK", "µK"], u("uK", Energy, KB * 1e-6)),
    (&["nK"], u("nK", Energy, KB * 1e-9)),
    (&["T"], u("T", MagneticField, 1.0)),
    (&["G"], u("G", MagneticField, 1e-4)),
    (&["mG"], u("mG", MagneticField, 1e-7)),
    // polarizability: SI is C·m²/V; a volume v corresponds to 4πε0·v
    (&["Cm2/V", "SI"], u("Cm2/V", Polarizability, 1.0)),
    (&["m3"], u("m3", Polarizability, 4.0 * PI * EPS0)),
    (&["cm3"], u("cm3", Polarizability, 4.0 * PI * EPS0 * 1e-6)),
    (&["A3", "Å3"], u("A3", Polarizability, 4.0 * PI * EPS0 * 1e-30)),
    (&["s"], u("s", Time, 1.0)),
    (&["ms"], u("ms", Time, 1e-3)),
    (&["us", "μs", "µs"], u("us", Time, 1e-6)),
    (&["Hz"], u("Hz", Frequency, 1.0)),
    (&["kHz"], u("kHz", Frequency, 1e3)),
    (&["MHz"], u("MHz", Frequency, 1e6)),
    (&["rad/s"], u("rad/s", Frequency, 1.0 / (2.0 * PI))),
    (&["Ohm m", "Ωm", "ohm*m"], u("Ohm m", Resistivity, 1.0)),
    (&["uOhm cm", "μΩcm"], u("uOhm cm", Resistivity, 1e-8)),
    (&["1", ""], u("1", Dimensionless, 1.0)),
];

pub fn parse_unit(s: &str) -> Result<Unit> {
    let t = s.trim();
    UNITS
        .iter()
        .find(|(names, _)| names.contains(&t))
        .map(|(_, u)| *u)
        .ok_or_else(|| Error::UnknownUnit(s.to_string()))
}

pub fn to_si(value: f64, unit: &str) -> Result<f64> {
    Ok(value * parse_unit(unit)?.si)
}

pub fn from_si(value: f64, unit: &str) -> Result<f64> {
    Ok(value / parse_unit(unit)?.si)
}

pub fn convert_units(value: f64, from: &str, to: &str) -> Result<f64> {
    let a = parse_unit(from)?;
    let b = parse_unit(to)?;
    if a.dimension != b.dimension {
        return Err(Error::IncompatibleUnits {
            from: from.into(),
            to: to.into(),
        });
    }
    if a.si == b.si {
        return Ok(value);
    }
    Ok(value * a.si / b.si)
}

pub fn all_units() -> impl Iterator<Item = Unit> {
    UNITS.iter().map(|(_, u)| *u)
}
