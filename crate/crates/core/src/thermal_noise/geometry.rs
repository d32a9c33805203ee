use serde::{Deserialize, Serialize};

use crate::domain::WireGeometry;
use crate::numerics::quad::{integrate_vec_breaks, QuadOptions};
use crate::{par, Error, Result};

/// X_ij = ½∫_V (x1−x')_i (x2−x')_j / (|x1−x'|³|x2−x'|³) d³x'.
///
/// Points are relative to the wire centre. All nine components are kept so
/// that the symmetry zeros can be checked rather than assumed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryFactors {
    pub x: [[f64; 3]; 3],
    pub x1: [f64; 3],
    pub x2: [f64; 3],
    pub geom: WireGeometry,
    /// Half-length of the x′ integration actually used.
    pub x_extent: f64,
    pub error_estimate: f64,
}

impl GeometryFactors {
    pub fn xx(&self) -> f64 {
        self.x[0][0]
    }
    pub fn yy(&self) -> f64 {
        self.x[1][1]
    }
    pub fn zz(&self) -> f64 {
        self.x[2][2]
    }

    pub fn diag(&self) -> [f64; 3] {
        [self.xx(), self.yy(), self.zz()]
    }

    /// Largest off-diagonal magnitude relative to the largest diagonal one.
    pub fn off_diagonal_fraction(&self) -> f64 {
        let d = self.diag().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut o = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    o = o.max(self.x[i][j].abs());
                }
            }
        }
        o / d
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// x′ extent is ±max(`extent_heights`·d, `extent_widths`·w), clipped to
    /// the wire length.
    pub extent_heights: f64,
    pub extent_widths: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            extent_heights: 100.0,
            extent_widths: 10.0,
        }
    }
}

/// Break points concentrated around `centers` at geometrically growing
/// offsets, so the adaptive rule sees the near-field peak.
fn breaks(lo: f64, hi: f64, centers: &[f64], scale: f64) -> Vec<f64> {
    let mut b = vec![lo, hi];
    for &c in centers {
        let c = c.clamp(lo, hi);
        b.push(c);
        let mut s = scale;
        while s < hi - lo {
            for p in [c - s, c + s] {
                if p > lo && p < hi {
                    b.push(p);
                }
            }
            s *= 4.0;
        }
    }
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, c| (*a - *c).abs() <= 1e-12 * (hi - lo));
    b
}

#[inline]
fn kernel(x1: &[f64; 3], x2: &[f64; 3], p: [f64; 3]) -> [f64; 9] {
    let r1 = [x1[0] - p[0], x1[1] - p[1], x1[2] - p[2]];
    let r2 = [x2[0] - p[0], x2[1] - p[1], x2[2] - p[2]];
    let n1 = r1[0] * r1[0] + r1[1] * r1[1] + r1[2] * r1[2];
    let n2 = r2[0] * r2[0] + r2[1] * r2[1] + r2[2] * r2[2];
    let f = 0.5 / (n1 * n1.sqrt() * n2 * n2.sqrt());
    let mut out = [0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = f * r1[i] * r2[j];
        }
    }
    out
}

pub fn geometry_factors(x1: [f64; 3], x2: [f64; 3], geom: &WireGeometry) -> Result<GeometryFactors> {
    geometry_factors_with(x1, x2, geom, QuadratureSettings::default())
}

pub fn geometry_factors_with(
    x1: [f64; 3],
    x2: [f64; 3],
    geom: &WireGeometry,
    settings: QuadratureSettings,
) -> Result<GeometryFactors> {
    for p in [x1, x2] {
        if geom.contains(p) {
            return Err(Error::InsideConductor(format!("point {p:?} lies inside the wire")));
        }
    }
    let d1 = geom.transverse_distance(x1);
    let d2 = geom.transverse_distance(x2);
    let d = d1.max(d2);
    if !(d1.min(d2) > 0.0) {
        return Err(Error::InsideConductor("point on the wire surface".into()));
    }
    let scale = d1.min(d2);
    let extent = (settings.extent_heights * d)
        .max(settings.extent_widths * geom.w)
        .max(x1[0].abs().max(x2[0].abs()) + settings.extent_heights * d)
        .min(geom.l / 2.0);
    let (hw, hh) = (geom.w / 2.0, geom.h / 2.0);
    let xb = breaks(-extent, extent, &[x1[0], x2[0]], scale);
    let yb = breaks(-hw, hw, &[x1[1], x2[1]], scale);
    let zb = breaks(-hh, hh, &[x1[2], x2[2]], scale);
    let outer = QuadOptions { rel_tol: settings.rel_tol, abs_tol: 0.0, max_intervals: 400 };
    let inner = QuadOptions { rel_tol: settings.rel_tol * 1e-2, abs_tol: 0.0, max_intervals: 400 };
    let panels: Vec<(f64, f64)> = xb.windows(2).map(|w| (w[0], w[1])).collect();
    let results = par::map(&panels, |&(a, b)| {
        let mut ok = true;
        let est = integrate_vec_breaks(
            |xp| {
                let ey = integrate_vec_breaks(
                    |yp| {
                        let ez = integrate_vec_breaks(|zp| kernel(&x1, &x2, [xp, yp, zp]), &zb, inner);
                        ok &= ez.converged;
                        ez.value
                    },
                    &yb,
                    inner,
                );
                ok &= ey.converged;
                ey.value
            },
            &[a, b],
            outer,
        );
        (est, ok)
    });
    let mut total = [0.0; 9];
    let mut err = 0.0;
    for (est, ok) in results {
        if !(ok && est.converged) {
            return Err(Error::Numerical("geometry-factor quadrature did not converge".into()));
        }
        for n in 0..9 {
            total[n] += est.value[n];
        }
        err += est.error;
    }
    let mut x = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            x[i][j] = total[3 * i + j];
        }
    }
    Ok(GeometryFactors {
        x,
        x1,
        x2,
        geom: *geom,
        x_extent: extent,
        error_estimate: err,
    })
}

/// Field point at height d above the top face, over the wire centre line.
pub fn above_center(geom: &WireGeometry, d: f64) -> [f64; 3] {
    [0.0, 0.0, geom.h / 2.0 + d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_symmetry() {
        let g = WireGeometry::square(1e-6, 1e-3).unwrap();
        let p = above_center(&g, 1e-6);
        // the point is above the top face, so y and z are not equivalent; a
        // point on the diagonal is needed for the square symmetry
        let q = [0.0, 1.5e-6, 1.5e-6];
        let x = geometry_factors(q, q, &g).unwrap();
        assert!((x.yy() - x.zz()).abs() < 1e-6 * x.yy());
        let x = geometry_factors(p, p, &g).unwrap();
        assert!(x.off_diagonal_fraction() < 1e-3);
    }

    #[test]
    fn half_space_limit() {
        let d = 1e-6;
        let g = WireGeometry::new(4e-3, 4e-3, 4e-2).unwrap();
        let p = above_center(&g, d);
        let x = geometry_factors(p, p, &g).unwrap();
        // finite extent ±100d in x truncates a ~1/(100) tail
        assert!((x.xx() / (PI / (8.0 * d)) - 1.0).abs() < 0.02, "{}", x.xx() * 8.0 * d / PI);
        assert!((x.zz() / (PI / (4.0 * d)) - 1.0).abs() < 0.02);
    }

    #[test]
    fn exchange_symmetry() {
        let g = WireGeometry::new(2e-6, 1e-6, 1e-3).unwrap();
        let a = [0.0, 0.3e-6, 1.5e-6];
        let b = [2e-6, -0.5e-6, 2.0e-6];
        let x = geometry_factors(a, b, &g).unwrap();
        let y = geometry_factors(b, a, &g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((x.x[i][j] - y.x[j][i]).abs() <= 1e-6 * x.xx().abs());
            }
        }
    }

    #[test]
    fn inside_rejected() {
        let g = WireGeometry::new(2e-6, 1e-6, 1e-3).unwrap();
        assert!(geometry_factors([0.0; 3], [0.0, 0.0, 2e-6], &g).is_err());
    }
}
