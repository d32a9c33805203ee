//! Sweeps over parameter grids, named reference scenarios and the
//! end-to-end design verdict.

pub mod builtin;
pub mod channels;
pub mod design;
pub mod params;
pub mod table;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use builtin::{builtin, builtin_names};
pub use channels::Channel;
pub use design::{design_report, ChipDesign, DesignReport, Verdict};
pub use params::{ParamValue, Params};
pub use table::{Cell, Column, Format, Provenance, ResultTable};

use params::{spec, to_display, Kind, ParamInternal};
use crate::domain::units::Dimension;
use crate::{par, Error, Result};

/// One sweep axis: explicit values, or a linear/log range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SweepAxis {
    pub parameter: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<ParamValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub log: bool,
}

impl SweepAxis {
    pub fn values(parameter: &str, values: impl IntoIterator<Item = ParamValue>) -> Self {
        Self {
            parameter: parameter.into(),
            values: values.into_iter().collect(),
            from: None,
            to: None,
            n: None,
            log: false,
        }
    }

    pub fn range(parameter: &str, from: f64, to: f64, n: usize, log: bool) -> Self {
        Self {
            parameter: parameter.into(),
            values: Vec::new(),
            from: Some(from),
            to: Some(to),
            n: Some(n),
            log,
        }
    }

    /// Grid in the parameter's display units.
    pub fn grid(&self) -> Result<Vec<ParamValue>> {
        let bad = |why: &str| Error::Config(format!("sweep `{}`: {why}", self.parameter));
        match (self.values.is_empty(), self.from, self.to, self.n) {
            (false, None, None, None) => Ok(self.values.clone()),
            (true, Some(a), Some(b), Some(n)) => {
                if n == 0 {
                    return Err(bad("n must be positive"));
                }
                if n == 1 {
                    return Ok(vec![a.into()]);
                }
                if self.log && !(a > 0.0 && b > 0.0) {
                    return Err(bad("log range needs positive limits"));
                }
                Ok((0..n)
                    .map(|i| {
                        let t = i as f64 / (n - 1) as f64;
                        if self.log {
                            (a.ln() + t * (b.ln() - a.ln())).exp().into()
                        } else {
                            (a + t * (b - a)).into()
                        }
                    })
                    .collect())
            }
            (true, None, None, None) => Err(bad("grid is empty")),
            _ => Err(bad("give either `values` or all of `from`, `to`, `n`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    #[serde(default)]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub outputs: Vec<Channel>,
    #[serde(default)]
    pub seed: u64,
}

struct ResolvedAxis {
    name: &'static str,
    values: Vec<ParamInternal>,
}

fn si_unit(d: Dimension) -> &'static str {
    match d {
        Dimension::Length => "m",
        Dimension::Current => "A",
        Dimension::Energy => "J",
        Dimension::MagneticField => "T",
        Dimension::Polarizability => "Cm2/V",
        Dimension::Time => "s",
        Dimension::Frequency => "Hz",
        Dimension::Resistivity => "Ohm m",
        Dimension::Dimensionless => "1",
    }
}

fn axis_column(name: &'static str) -> Column {
    let s = spec(name).expect("validated");
    match s.kind {
        Kind::Quantity { dimension, unit, scale, .. } => {
            if scale != 1.0 {
                return Column::si(name, unit);
            }
            let base = si_unit(dimension);
            let c = Column::si(name, base);
            if unit == base || unit == "1" {
                c
            } else {
                c.with_display(unit, to_display(s, 1.0))
            }
        }
        Kind::Choice { .. } => Column::si(name, ""),
    }
}

/// Per-point seed from the scenario seed and the row index (splitmix64).
pub fn row_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(s).map_err(|e| Error::Config(format!("scenario: {e}")))?;
        sc.validate()?;
        Ok(sc)
    }

    /// sha256 of the canonical JSON form.
    pub fn config_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("scenario serialises");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn base_params(&self) -> Result<Params> {
        Params::from_map(&self.params)
    }

    fn resolve_axes(&self) -> Result<Vec<ResolvedAxis>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for a in &self.sweep {
            let s = spec(&a.parameter).ok_or_else(|| Error::Config(format!("sweep: unknown parameter `{}`", a.parameter)))?;
            if seen.contains(&s.name) {
                return Err(Error::Config(format!("sweep: `{}` appears twice", s.name)));
            }
            seen.push(s.name);
            let values = a
                .grid()?
                .iter()
                .map(|v| params::to_internal(s, v))
                .collect::<Result<Vec<_>>>()?;
            let nums: Vec<f64> = values
                .iter()
                .filter_map(|v| match v {
                    ParamInternal::Number(x) => Some(*x),
                    _ => None,
                })
                .collect();
            if nums.len() == values.len() {
                let up = nums.windows(2).all(|w| w[1] > w[0]);
                let down = nums.windows(2).all(|w| w[1] < w[0]);
                if !(up || down) {
                    return Err(Error::Config(format!("sweep `{}`: grid must be strictly monotone", s.name)));
                }
            } else {
                for (i, v) in values.iter().enumerate() {
                    if values[..i].contains(v) {
                        return Err(Error::Config(format!("sweep `{}`: repeated value", s.name)));
                    }
                }
            }
            out.push(ResolvedAxis { name: s.name, values });
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        self.base_params()?;
        self.resolve_axes()?;
        Ok(())
    }

    pub fn rows(&self) -> Result<usize> {
        Ok(self.resolve_axes()?.iter().map(|a| a.values.len()).product())
    }
}

/// Evaluates every output channel over the sweep grid. The first axis
/// varies slowest. Physics failures become error cells; only an invalid
/// configuration is an `Err`.
pub fn run_scenario(sc: &Scenario) -> Result<ResultTable> {
    let base = sc.base_params()?;
    let axes = sc.resolve_axes()?;
    let mut columns: Vec<Column> = axes.iter().map(|a| axis_column(a.name)).collect();
    for ch in &sc.outputs {
        columns.extend(ch.columns());
    }
    let provenance = Provenance {
        scenario: sc.name.clone(),
        config_hash: sc.config_hash(),
        seed: sc.seed,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    if sc.outputs.is_empty() {
        return Ok(ResultTable {
            columns,
            rows: Vec::new(),
            provenance,
        });
    }
    let n: usize = axes.iter().map(|a| a.values.len()).product();
    let rows = par::map_range(n, |idx| {
        let mut p = base.clone();
        let mut cells = Vec::new();
        let mut rem = idx;
        let mut digits = vec![0; axes.len()];
        for (k, a) in axes.iter().enumerate().rev() {
            digits[k] = rem % a.values.len();
            rem /= a.values.len();
        }
        for (a, &j) in axes.iter().zip(&digits) {
            match &a.values[j] {
                ParamInternal::Number(v) => {
                    p.set_internal(a.name, *v).expect("validated");
                    cells.push(Cell::Number(*v));
                }
                ParamInternal::Choice(s) => {
                    p.set(a.name, &ParamValue::Text(s.clone())).expect("validated");
                    cells.push(Cell::Text(s.clone()));
                }
            }
        }
        let seed = row_seed(sc.seed, idx);
        for ch in &sc.outputs {
            match ch.evaluate(&p, seed) {
                Ok(v) => cells.extend(v),
                Err(e) => cells.extend(std::iter::repeat_n(Cell::Error { error: e.to_string() }, ch.columns().len())),
            }
        }
        cells
    });
    Ok(ResultTable {
        columns,
        rows,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_without_outputs() {
        let mut sc = builtin("fig3").unwrap();
        sc.outputs.clear();
        let t = run_scenario(&sc).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.columns.len(), 1);
    }

    #[test]
    fn row_count_and_order() {
        let sc = Scenario {
            name: "t".into(),
            params: BTreeMap::new(),
            sweep: vec![
                SweepAxis::values("side", [25.0.into(), 50.0.into()]),
                SweepAxis::range("d", 0.5, 1.0, 3, false),
            ],
            outputs: vec![Channel::Resistivity],
            seed: 0,
        };
        let t = run_scenario(&sc).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert!((t.rows[1][0].as_f64().unwrap() - 25e-9).abs() < 1e-20);
        assert!((t.rows[3][0].as_f64().unwrap() - 50e-9).abs() < 1e-20);
        assert!((t.rows[4][1].as_f64().unwrap() - 0.75e-6).abs() < 1e-18);
    }

    #[test]
    fn validation_errors_are_config() {
        let bad = [
            r#"{"name":"x","params":{"dd":1}}"#,
            r#"{"name":"x","sweep":[{"parameter":"d","values":[1,1]}]}"#,
            r#"{"name":"x","sweep":[{"parameter":"d","values":[]}]}"#,
            r#"{"name":"x","outputs":["bogus"]}"#,
            r#"{"name":"x","extra":1}"#,
            r#"{"name":"x","sweep":[{"parameter":"d","from":1,"to":2}]}"#,
        ];
        for s in bad {
            let e = Scenario::from_json(s).unwrap_err();
            assert!(e.is_config(), "{s}: {e}");
        }
    }

    #[test]
    fn physics_failure_is_an_error_cell() {
        let sc = Scenario {
            name: "t".into(),
            params: [("I".to_string(), ParamValue::Number(0.0))].into(),
            sweep: vec![],
            outputs: vec![Channel::Corrugation],
            seed: 0,
        };
        let t = run_scenario(&sc).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.error_cells(), 4);
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = builtin("fig13").unwrap();
        let mut b = a.clone();
        assert_eq!(a.config_hash(), b.config_hash());
        b.seed = 1;
        assert_ne!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 64);
    }

    #[test]
    fn seeds_differ_per_row() {
        assert_ne!(row_seed(0, 0), row_seed(0, 1));
        assert_ne!(row_seed(0, 1), row_seed(1, 1));
    }
}
