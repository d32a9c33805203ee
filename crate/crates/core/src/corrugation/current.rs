use num_complex::Complex64;

use super::roughness::EdgeRoughness;
use crate::domain::WireGeometry;
use crate::error::ensure_finite;
use crate::Result;

/// Transverse current perturbation inside a wire with rough edges.
///
/// Per mode, with J0 = I/(wh) and δy_c, δy_a the symmetric and
/// antisymmetric edge parts:
/// δJ_y = ik J0 e^{ikx} [δy_c cosh(ky)/cosh(kw/2) + δy_a sinh(ky)/sinh(kw/2)].
#[derive(Debug, Clone)]
pub struct TransverseCurrent {
    pub j0: f64,
    pub geom: WireGeometry,
    pub k: Vec<f64>,
    sym: Vec<Complex64>,
    anti: Vec<Complex64>,
    sym_z: Vec<Complex64>,
    anti_z: Vec<Complex64>,
}

/// cosh(ky)/cosh(kb) for |y| ≤ b without overflow.
pub(crate) fn cosh_ratio(k: f64, y: f64, b: f64) -> f64 {
    let (k, y) = (k.abs(), y.abs());
    ((k * (y - b)).exp()) * (1.0 + (-2.0 * k * y).exp()) / (1.0 + (-2.0 * k * b).exp())
}

/// sinh(ky)/sinh(kb) for |y| ≤ b without overflow.
pub(crate) fn sinh_ratio(k: f64, y: f64, b: f64) -> f64 {
    let k = k.abs();
    if k * b < 1e-8 {
        return y / b;
    }
    let s = y.signum();
    let y = y.abs();
    s * ((k * (y - b)).exp()) * (-(-2.0 * k * y).exp_m1()) / (-(-2.0 * k * b).exp_m1())
}

impl TransverseCurrent {
    pub fn jy(&self, x: f64, y: f64) -> f64 {
        let b = self.geom.w / 2.0;
        let mut s = 0.0;
        for i in 0..self.k.len() {
            let k = self.k[i];
            let c = self.sym[i] * cosh_ratio(k, y, b) + self.anti[i] * sinh_ratio(k, y, b);
            s += 2.0 * (Complex64::new(0.0, k * self.j0) * c * Complex64::from_polar(1.0, k * x)).re;
        }
        s
    }

    /// Vertical current from top/bottom surface roughness; uniform in y.
    pub fn jz(&self, x: f64, z: f64) -> f64 {
        let b = self.geom.h / 2.0;
        let mut s = 0.0;
        for i in 0..self.k.len() {
            let k = self.k[i];
            let c = self.sym_z[i] * cosh_ratio(k, z, b) + self.anti_z[i] * sinh_ratio(k, z, b);
            s += 2.0 * (Complex64::new(0.0, k * self.j0) * c * Complex64::from_polar(1.0, k * x)).re;
        }
        s
    }

    /// J0·∂δy_c/∂x, the narrow-wire limit of `jy`.
    pub fn narrow_limit(&self, x: f64) -> f64 {
        (0..self.k.len())
            .map(|i| {
                let k = self.k[i];
                2.0 * (Complex64::new(0.0, k * self.j0) * self.sym[i] * Complex64::from_polar(1.0, k * x)).re
            })
            .sum()
    }

    pub fn has_surface_roughness(&self) -> bool {
        self.sym_z.iter().chain(&self.anti_z).any(|c| c.norm() > 0.0)
    }
}

pub fn current_response(edges: &EdgeRoughness, geom: &WireGeometry, current: f64) -> Result<TransverseCurrent> {
    ensure_finite("I", current)?;
    let n = edges.k.len();
    let half = |a: &[Complex64], b: &[Complex64], s: f64| -> Vec<Complex64> {
        (0..n).map(|i| 0.5 * (a[i] + s * b[i])).collect()
    };
    Ok(TransverseCurrent {
        j0: current / geom.area(),
        geom: *geom,
        k: edges.k.clone(),
        sym: half(&edges.plus, &edges.minus, 1.0),
        anti: half(&edges.plus, &edges.minus, -1.0),
        sym_z: half(&edges.top, &edges.bottom, 1.0),
        anti_z: half(&edges.top, &edges.bottom, -1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wire(w: f64) -> WireGeometry {
        WireGeometry::new(w, 50e-9, 1e-3).unwrap()
    }

    #[test]
    fn straight_wire_has_no_transverse_current() {
        let e = EdgeRoughness::single_mode(1e7, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let j = current_response(&e, &wire(1e-6), 1e-3).unwrap();
        assert_eq!(j.jy(0.3e-6, 0.1e-6), 0.0);
    }

    #[test]
    fn narrow_limit() {
        let k = 2.0 * std::f64::consts::PI / 1e-6;
        let w = 0.01 / k;
        let c = Complex64::new(1e-9, 0.5e-9);
        let j = current_response(&EdgeRoughness::single_mode(k, c, c), &wire(w), 1e-3).unwrap();
        for x in [0.0, 0.1e-6, 0.37e-6] {
            let a = j.jy(x, 0.3 * w);
            let b = j.narrow_limit(x);
            assert!((a - b).abs() <= 0.01 * b.abs().max(1e-3 * j.j0 * k * 1e-9));
        }
    }

    #[test]
    fn symmetric_in_y_and_finite_at_large_kw() {
        let k = 2.0 * std::f64::consts::PI / 0.1e-6;
        let c = Complex64::new(1e-9, 0.0);
        let g = WireGeometry::new(50e-6, 1e-6, 1e-3).unwrap();
        let j = current_response(&EdgeRoughness::single_mode(k, c, c), &g, 1e-3).unwrap();
        for y in [0.0, 1e-6, 24.9e-6] {
            let (a, b) = (j.jy(0.02e-6, y), j.jy(0.02e-6, -y));
            assert!(a.is_finite() && (a - b).abs() <= 1e-12 * a.abs());
        }
        // at the edge the displacement gradient is recovered
        let edge = j.jy(0.02e-6, 25e-6);
        let expect = j.narrow_limit(0.02e-6);
        assert!((edge - expect).abs() < 1e-9 * expect.abs());
    }

    #[test]
    fn ratios() {
        assert!((cosh_ratio(2.0, 0.3, 0.5) - (0.6f64).cosh() / 1f64.cosh()).abs() < 1e-14);
        assert!((sinh_ratio(2.0, -0.3, 0.5) + (0.6f64).sinh() / 1f64.sinh()).abs() < 1e-14);
    }
}
