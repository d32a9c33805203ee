use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    /// Convenience copy in lab units, when different from SI.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<(String, f64)>,
}

impl Column {
    pub fn si(name: &str, unit: &str) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            display: None,
        }
    }

    /// `factor` multiplies the SI value to give the display value.
    pub fn with_display(mut self, unit: &str, factor: f64) -> Self {
        self.display = Some((unit.into(), factor));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Text(String),
    Error { error: String },
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(*v),
            _ => None,
        }
    }

    fn render(&self, factor: f64) -> String {
        match self {
            Cell::Number(v) => format!("{:e}", v * factor),
            Cell::Text(s) => s.clone(),
            Cell::Error { error } => format!("error: {error}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub scenario: String,
    pub config_hash: String,
    pub seed: u64,
    pub code_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl ResultTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Numeric values of a column; error cells become None.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn error_cells(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .filter(|c| matches!(c, Cell::Error { .. }))
            .count()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Numerical(format!("csv: {e}"));
        let mut header = Vec::new();
        for c in &self.columns {
            header.push(if c.unit == "1" || c.unit.is_empty() { c.name.clone() } else { format!("{} [{}]", c.name, c.unit) });
            if let Some((u, _)) = &c.display {
                header.push(format!("{} [{u}]", c.name));
            }
        }
        w.write_record(&header).map_err(io)?;
        for row in &self.rows {
            let mut rec = Vec::new();
            for (c, cell) in self.columns.iter().zip(row) {
                rec.push(cell.render(1.0));
                if let Some((_, f)) = &c.display {
                    rec.push(cell.render(*f));
                }
            }
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Numerical(format!("csv: {e}")))?;
        let mut out = format!(
            "# scenario={} config_hash={} seed={} version={}\n",
            self.provenance.scenario, self.provenance.config_hash, self.provenance.seed, self.provenance.code_version
        );
        out.push_str(&String::from_utf8_lossy(&bytes));
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Numerical(format!("json: {e}")))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn write<W: Write>(&self, mut out: W, format: Format) -> Result<()> {
        out.write_all(self.render(format)?.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write output: {e}")))
    }
}
