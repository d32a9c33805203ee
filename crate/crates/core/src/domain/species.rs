use serde::{Deserialize, Serialize};

use super::constants::{EPS0, MU_B};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperfineState {
    pub f: f64,
    pub m_f: f64,
}

impl HyperfineState {
    pub const fn new(f: f64, m_f: f64) -> Self {
        Self { f, m_f }
    }

    pub fn label(&self) -> String {
        format!("|{},{}>", self.f, self.m_f)
    }

    /// Accepts `|2,2>`, `2,2`, `F=2,mF=2` and the ket with a unicode bracket.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s
            .chars()
            .filter(|c| !matches!(c, '|' | '>' | '⟩' | ' ' | '(' | ')'))
            .collect();
        let t = t.replace("mF=", "").replace("F=", "").replace("m_F=", "");
        let mut it = t.split(',');
        let f = it.next().and_then(|v| v.parse::<f64>().ok());
        let m = it.next().and_then(|v| v.parse::<f64>().ok());
        match (f, m, it.next()) {
            (Some(f), Some(m_f), None) if f >= 0.0 && m_f.abs() <= f => Ok(Self { f, m_f }),
            _ => Err(Error::UnknownState(s.to_string())),
        }
    }
}

/// Atom species with the hyperfine manifold used by the trap.
///
/// Magnetic moments are reported as gF·mF·μB. For Rb-87 F=2 the Landé
/// factor is positive, so the trapped |2,2> state has a positive moment and
/// `mu_a` (used by every potential) is that value. Callers wanting a moment
/// magnitude for an arbitrary sublevel should take `abs()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpecies {
    pub name: String,
    pub mass: f64,
    pub g_f: f64,
    /// Trapped sublevel; also the first qubit label.
    pub trapped: HyperfineState,
    /// Static polarizability volume, m³ (α/(4πε0)).
    pub polarizability_volume: f64,
    pub scattering_length: f64,
    pub state_labels: [HyperfineState; 2],
}

impl AtomSpecies {
    pub fn rb87() -> Self {
        Self {
            name: "Rb87".into(),
            mass: 1.443_16e-25,
            g_f: 0.5,
            trapped: HyperfineState::new(2.0, 2.0),
            polarizability_volume: 47.3e-24 * 1e-6,
            scattering_length: 5.24e-9,
            state_labels: [HyperfineState::new(2.0, 2.0), HyperfineState::new(2.0, 1.0)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::param("mass", "must be positive"));
        }
        if !(self.polarizability_volume > 0.0) {
            return Err(Error::param("alpha0", "must be positive"));
        }
        if self.mu_a().abs() > 2.0 * MU_B {
            return Err(Error::param("muA", "exceeds 2 μB"));
        }
        Ok(())
    }

    /// Moment of the trapped state along the local field.
    pub fn mu_a(&self) -> f64 {
        self.g_f * self.trapped.m_f * MU_B
    }

    /// SI polarizability, C·m²/V.
    pub fn alpha0_si(&self) -> f64 {
        4.0 * std::f64::consts::PI * EPS0 * self.polarizability_volume
    }

    fn find(&self, label: &str) -> Result<HyperfineState> {
        let s = HyperfineState::parse(label)?;
        if self.state_labels.contains(&s) || s == self.trapped {
            Ok(s)
        } else {
            Err(Error::UnknownState(format!(
                "{label} (known: {}, {})",
                self.state_labels[0].label(),
                self.state_labels[1].label()
            )))
        }
    }

    /// gF·mF·μB of a labelled state. Besides the two qubit labels the
    /// trapped state and mF = 0 of the same F are accepted.
    pub fn magnetic_moment(&self, label: &str) -> Result<f64> {
        let s = match self.find(label) {
            Ok(s) => s,
            Err(e) => {
                let s = HyperfineState::parse(label)?;
                if s.f == self.trapped.f && s.m_f == 0.0 {
                    s
                } else {
                    return Err(e);
                }
            }
        };
        Ok(self.g_f * s.m_f * MU_B)
    }

    /// Difference of the two qubit-state moments.
    pub fn qubit_moment_difference(&self) -> f64 {
        let [a, b] = self.state_labels;
        self.g_f * (a.m_f - b.m_f) * MU_B
    }

    /// Transverse matrix element |<F, mF-1| μ_- |F, mF>|/2, the quantity
    /// entering the spin-flip rate with the transverse noise components.
    pub fn transverse_moment(&self) -> f64 {
        let HyperfineState { f, m_f } = self.trapped;
        MU_B * self.g_f.abs() * (f * (f + 1.0) - m_f * (m_f - 1.0)).sqrt() / 2.0
    }
}

impl Default for AtomSpecies {
    fn default() -> Self {
        Self::rb87()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rb87_moments() {
        let rb = AtomSpecies::rb87();
        assert_eq!(rb.magnetic_moment("|2,2>").unwrap(), MU_B);
        assert_eq!(rb.magnetic_moment("F=2,mF=0").unwrap(), 0.0);
        assert!((rb.qubit_moment_difference() - MU_B / 2.0).abs() < 1e-40);
        assert!(matches!(rb.magnetic_moment("|1,-1>"), Err(Error::UnknownState(_))));
        assert!(rb.magnetic_moment("garbage").is_err());
        // the stretched state: sqrt(4+2-4-2... ) -> F(F+1)-mF(mF-1) = 6-2 = 4
        assert!((rb.transverse_moment() - MU_B / 2.0).abs() < 1e-40);
        rb.validate().unwrap();
    }

    #[test]
    fn moment_linear_in_mf() {
        let rb = AtomSpecies::rb87();
        let m2 = rb.magnetic_moment("2,2").unwrap();
        let m1 = rb.magnetic_moment("2,1").unwrap();
        let m0 = rb.magnetic_moment("2,0").unwrap();
        assert!(((m2 - m1) - (m1 - m0)).abs() < 1e-40);
    }
}
