use serde::{Deserialize, Serialize};

use crate::error::ensure_positive;
use crate::{Error, Result};

/// Rectangular wire along x̂; width along ŷ, thickness along ẑ.
///
/// The cross-section is centred on the origin unless stated otherwise;
/// "distance d" in trap contexts is measured from the top face (z = h/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WireGeometry {
    pub w: f64,
    pub h: f64,
    pub l: f64,
}

impl WireGeometry {
    pub fn new(w: f64, h: f64, l: f64) -> Result<Self> {
        ensure_positive("w", w)?;
        ensure_positive("h", h)?;
        ensure_positive("L", l)?;
        if l < 10.0 * w.max(h) {
            return Err(Error::param(
                "L",
                format!("wire must be long compared to its cross-section (L = {l:e}, max(w,h) = {:e})", w.max(h)),
            ));
        }
        Ok(Self { w, h, l })
    }

    pub fn square(side: f64, l: f64) -> Result<Self> {
        Self::new(side, side, l)
    }

    /// Radius used by the cylindrical Casimir-Polder model.
    pub fn cylinder_radius(&self) -> f64 {
        self.h / 2.0
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    /// Is (x, y, z), relative to the wire centre, inside the conductor?
    pub fn contains(&self, p: [f64; 3]) -> bool {
        p[0].abs() <= self.l / 2.0 && p[1].abs() <= self.w / 2.0 && p[2].abs() <= self.h / 2.0
    }

    /// Distance from a point to the (infinitely long) cross-section.
    pub fn transverse_distance(&self, p: [f64; 3]) -> f64 {
        let dy = (p[1].abs() - self.w / 2.0).max(0.0);
        let dz = (p[2].abs() - self.h / 2.0).max(0.0);
        dy.hypot(dz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub permittivity: f64,
    /// `None` for the semi-infinite bottom layer.
    pub thickness: Option<f64>,
}

/// Dielectric layers from the top surface downward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerStack {
    layers: Vec<Layer>,
}

impl LayerStack {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        let n = layers.len();
        if n == 0 {
            return Err(Error::param("layers", "empty stack"));
        }
        for (i, l) in layers.iter().enumerate() {
            if !(l.permittivity >= 1.0) {
                return Err(Error::param("permittivity", format!("layer {i}: ε must be ≥ 1")));
            }
            match (i + 1 == n, l.thickness) {
                (true, None) => {}
                (true, Some(_)) => return Err(Error::param("layers", "bottom layer must be semi-infinite")),
                (false, None) => return Err(Error::param("layers", "only the bottom layer may be semi-infinite")),
                (false, Some(t)) => {
                    ensure_positive("thickness", t)?;
                }
            }
        }
        Ok(Self { layers })
    }

    pub fn half_space(permittivity: f64) -> Result<Self> {
        Self::new(vec![Layer { permittivity, thickness: None }])
    }

    /// 100 nm of SiO2 (ε = 4) on silicon (ε = 12).
    pub fn sio2_on_si() -> Self {
        Self {
            layers: vec![
                Layer { permittivity: 4.0, thickness: Some(100e-9) },
                Layer { permittivity: 12.0, thickness: None },
            ],
        }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
}

/// Diagonal conductivity in the wire frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConductivityTensor {
    pub sxx: f64,
    pub syy: f64,
    pub szz: f64,
    pub temperature: f64,
}

impl ConductivityTensor {
    pub fn new(sxx: f64, syy: f64, szz: f64, temperature: f64) -> Result<Self> {
        ensure_positive("sxx", sxx)?;
        ensure_positive("syy", syy)?;
        ensure_positive("szz", szz)?;
        ensure_positive("temperature", temperature)?;
        Ok(Self { sxx, syy, szz, temperature })
    }

    pub fn isotropic(sigma: f64, temperature: f64) -> Result<Self> {
        Self::new(sigma, sigma, sigma, temperature)
    }

    /// Quasi-1D conductor: σxx along the wire, the two transverse ones
    /// reduced by `ratio` (> 1).
    pub fn quasi_1d(sigma_xx: f64, ratio: f64, temperature: f64) -> Result<Self> {
        ensure_positive("ratio", ratio)?;
        Self::new(sigma_xx, sigma_xx / ratio, sigma_xx / ratio, temperature)
    }

    /// Layered conductor: good in-plane (x, y), poor along z.
    pub fn layered(sigma_plane: f64, ratio: f64, temperature: f64) -> Result<Self> {
        ensure_positive("ratio", ratio)?;
        Self::new(sigma_plane, sigma_plane, sigma_plane / ratio, temperature)
    }

    pub fn diag(&self) -> [f64; 3] {
        [self.sxx, self.syy, self.szz]
    }
}
