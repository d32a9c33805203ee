//! Direct volume integration of the Biot-Savart law over the perturbed
//! current, for validating the spectral corrugation formula.

use std::f64::consts::PI;

use super::current::{current_response, TransverseCurrent};
use super::roughness::EdgeRoughness;
use crate::domain::constants::MU0;
use crate::domain::WireGeometry;
use crate::error::ensure_positive;
use crate::{par, Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// x cells per shortest wavelength; at least 8.
    pub cells_per_wavelength: usize,
    /// Integration runs over ±`span_heights`·z (at least ±2 longest
    /// wavelengths), rounded up to whole longest wavelengths.
    pub span_heights: f64,
    /// Gauss-Legendre points per x cell, across y, and across z.
    pub nodes: [usize; 3],
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            cells_per_wavelength: 12,
            span_heights: 200.0,
            nodes: [4, 8, 4],
        }
    }
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// δB_x at (x, 0, z) for each x in `xs`; z is measured from the wire centre.
pub fn biot_savart_oracle(
    edges: &EdgeRoughness,
    geom: &WireGeometry,
    current: f64,
    z: f64,
    xs: &[f64],
    opts: OracleOptions,
) -> Result<Vec<f64>> {
    ensure_positive("z", z)?;
    if z <= geom.h / 2.0 {
        return Err(Error::InsideConductor("observation height must be above the wire".into()));
    }
    if opts.cells_per_wavelength < 8 {
        return Err(Error::param(
            "cells_per_wavelength",
            format!("{} cells per shortest wavelength under-resolves the roughness; need ≥ 8", opts.cells_per_wavelength),
        ));
    }
    if edges.k.is_empty() {
        return Ok(vec![0.0; xs.len()]);
    }
    let j = current_response(edges, geom, current)?;
    let lam_min = 2.0 * PI / edges.k_max();
    let lam_max = 2.0 * PI / edges.k_min();
    let cell = lam_min / opts.cells_per_wavelength as f64;
    let span = ((opts.span_heights * z).max(2.0 * lam_max) / lam_max).ceil() * lam_max;
    let (gx, wx) = gauss_legendre(opts.nodes[0]);
    let (gy, wy) = gauss_legendre(opts.nodes[1]);
    let (gz, wz) = gauss_legendre(opts.nodes[2]);
    let ncell = (2.0 * span / cell).ceil() as usize;
    let cell = 2.0 * span / ncell as f64;
    let surf = j.has_surface_roughness();
    let out = par::map(xs, |&x0| {
        let partial = par::map_range(ncell, |c| cell_contribution(&j, x0, z, -span + c as f64 * cell, cell, (&gx, &wx), (&gy, &wy), (&gz, &wz), surf));
        partial.into_iter().fold(0.0, |a, b| a + b) * MU0 / (4.0 * PI)
    });
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cell_contribution(
    j: &TransverseCurrent,
    x0: f64,
    z: f64,
    s0: f64,
    cell: f64,
    (gx, wx): (&[f64], &[f64]),
    (gy, wy): (&[f64], &[f64]),
    (gz, wz): (&[f64], &[f64]),
    surf: bool,
) -> f64 {
    let (hw, hh) = (j.geom.w / 2.0, j.geom.h / 2.0);
    let mut acc = 0.0;
    for (a, wa) in gx.iter().zip(wx) {
        // s = x' − x0
        let s = s0 + 0.5 * cell * (a + 1.0);
        let xp = x0 + s;
        let fx = 0.5 * cell * wa;
        for (b, wb) in gy.iter().zip(wy) {
            let yp = hw * b;
            let jy = j.jy(xp, yp);
            for (c, wc) in gz.iter().zip(wz) {
                let zp = hh * c;
                let r2 = s * s + yp * yp + (z - zp) * (z - zp);
                let inv3 = 1.0 / (r2 * r2.sqrt());
                // (δJ × R)_x with R = r − r' and the field point at y = 0
                let mut f = jy * (z - zp);
                if surf {
                    f -= j.jz(xp, zp) * (0.0 - yp);
                }
                acc += fx * hw * wb * hh * wc * f * inv3;
            }
        }
    }
    acc
}
