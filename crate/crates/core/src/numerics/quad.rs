//! Adaptive Gauss-Kronrod (10/21 point) quadrature, scalar and vector valued.

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_574_786_209,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

fn norm<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn gk21<const N: usize, F: FnMut(f64) -> [f64; N]>(
    f: &mut F,
    a: f64,
    b: f64,
) -> ([f64; N], f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    for n in 0..N {
        k[n] = WGK[10] * fc[n];
    }
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for n in 0..N {
            let s = f1[n] + f2[n];
            k[n] += WGK[j] * s;
            if j % 2 == 1 {
                g[n] += WG[j / 2] * s;
            }
        }
    }
    let mut err = 0.0f64;
    for n in 0..N {
        k[n] *= h;
        g[n] *= h;
        err = err.max((k[n] - g[n]).abs());
    }
    // QUADPACK-style pessimism for smooth integrands is overkill here; the
    // raw Kronrod-Gauss difference already overestimates by orders.
    (k, err)
}

/// Globally adaptive bisection over `[a, b]`, always splitting the interval
/// with the largest error. Returns the best estimate even when the interval
/// budget runs out; check `converged`.
pub fn integrate_vec<const N: usize, F: FnMut(f64) -> [f64; N]>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Estimate<N> {
    if a == b {
        return Estimate {
            value: [0.0; N],
            error: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    let (v0, e0) = gk21(&mut f, a, b);
    let mut parts = vec![(a, b, v0, e0)];
    let mut total = v0;
    let mut err = e0;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * norm(&total));
        if err <= tol || !err.is_finite() {
            break;
        }
        if parts.len() >= opts.max_intervals {
            return Estimate {
                value: total,
                error: err,
                intervals: parts.len(),
                converged: false,
            };
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, _, _) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval collapsed to machine resolution
            parts.push((lo, hi, [0.0; N], 0.0));
            return finish(parts, false);
        }
        let (v1, e1) = gk21(&mut f, lo, mid);
        let (v2, e2) = gk21(&mut f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
        // Re-summing keeps the total free of cancellation drift.
        total = [0.0; N];
        err = 0.0;
        for p in &parts {
            for n in 0..N {
                total[n] += p.2[n];
            }
            err += p.3;
        }
    }
    Estimate {
        value: total,
        error: err,
        intervals: parts.len(),
        converged: err.is_finite(),
    }
}

fn finish<const N: usize>(parts: Vec<(f64, f64, [f64; N], f64)>, converged: bool) -> Estimate<N> {
    let mut total = [0.0; N];
    let mut err = 0.0;
    for p in &parts {
        for n in 0..N {
            total[n] += p.2[n];
        }
        err += p.3;
    }
    Estimate {
        value: total,
        error: err,
        intervals: parts.len(),
        converged,
    }
}

/// Scalar wrapper. Fails if the tolerance is not met.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    let est = integrate_vec(|x| [f(x)], a, b, opts);
    if !est.value[0].is_finite() {
        return Err(Error::Numerical("non-finite integrand".into()));
    }
    if !est.converged {
        return Err(Error::Numerical(format!(
            "quadrature did not converge on [{a:e}, {b:e}] (error estimate {:e})",
            est.error
        )));
    }
    Ok(est.value[0])
}

/// Sum over consecutive break points; useful when the integrand has known
/// features (peaks, kinks) at interior points.
pub fn integrate_vec_breaks<const N: usize, F: FnMut(f64) -> [f64; N]>(
    mut f: F,
    breaks: &[f64],
    opts: QuadOptions,
) -> Estimate<N> {
    let mut out = Estimate {
        value: [0.0; N],
        error: 0.0,
        intervals: 0,
        converged: true,
    };
    for w in breaks.windows(2) {
        let e = integrate_vec(&mut f, w[0], w[1], opts);
        for n in 0..N {
            out.value[n] += e.value[n];
        }
        out.error += e.error;
        out.intervals += e.intervals;
        out.converged &= e.converged;
    }
    out
}
