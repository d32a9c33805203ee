//! Modified Bessel functions of the second kind, orders 0 to 2.
//!
//! Power series below u = 2, Steed/Temme continued fraction above.

use std::f64::consts::PI;

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

fn series(u: f64) -> (f64, f64) {
    let q = 0.25 * u * u;
    let ln = (0.5 * u).ln();
    // K0 = -(ln(u/2) + γ) I0 + Σ H_k q^k / (k!)²
    // K1 = 1/u + ln(u/2) I1 - (u/4) Σ (ψ(k+1) + ψ(k+2)) q^k / (k! (k+1)!)
    let mut i0 = 0.0;
    let mut i1 = 0.0;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut t0 = 1.0; // q^k / (k!)²
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    let mut h = 0.0; // harmonic number H_k
    for k in 0..60 {
        let kf = k as f64;
        let psi1 = -EULER_GAMMA + h;
        let psi2 = psi1 + 1.0 / (kf + 1.0);
        i0 += t0;
        i1 += t1;
        s0 += h * t0;
        s1 += (psi1 + psi2) * t1;
        if t0 < 1e-18 * i0 && k > 2 {
            break;
        }
        h += 1.0 / (kf + 1.0);
        t0 *= q / ((kf + 1.0) * (kf + 1.0));
        t1 *= q / ((kf + 1.0) * (kf + 2.0));
    }
    i1 *= 0.5 * u;
    let k0 = -(ln + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / u + ln * i1 - 0.25 * u * s1;
    (k0, k1)
}

/// Returns e^x·(K0, K1).
fn continued_fraction(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// (K0(u), K1(u)) for u > 0.
pub fn bessel_k01(u: f64) -> Result<(f64, f64)> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::param("u", format!("Bessel K needs a positive argument, got {u}")));
    }
    Ok(if u < 2.0 {
        series(u)
    } else {
        let (a, b) = continued_fraction(u);
        let e = (-u).exp();
        (a * e, b * e)
    })
}

pub fn bessel_k0(u: f64) -> Result<f64> {
    Ok(bessel_k01(u)?.0)
}

pub fn bessel_k1(u: f64) -> Result<f64> {
    Ok(bessel_k01(u)?.1)
}

pub fn bessel_k2(u: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01(u)?;
    Ok(k0 + 2.0 * k1 / u)
}

/// e^u K1(u); finite for large u where K1 itself underflows.
pub fn bessel_k1_scaled(u: f64) -> Result<f64> {
    if u < 2.0 {
        return Ok(bessel_k1(u)? * u.exp());
    }
    Ok(continued_fraction(u).1)
}

/// The closed-form large-argument estimate (e^-u/u)·sqrt(1 + πu/2).
pub fn bessel_k1_approx(u: f64) -> f64 {
    (-u).exp() / u * (1.0 + PI * u / 2.0).sqrt()
}
