//! Potential corrugation from wire-edge roughness.
//!
//! Edge displacements are stored as one-sided spectra over k > 0; the real
//! profile is δy(x) = Σ_k 2·Re(δy_k e^{ikx}). The model rms of a spectrum is
//! √(Σ|δy_k|²); a realised profile has spatial rms √2 times that.

pub mod current;
pub mod oracle;
pub mod roughness;
pub mod spectrum;

pub use current::{current_response, TransverseCurrent};
pub use oracle::{biot_savart_oracle, OracleOptions};
pub use roughness::{synth_roughness, EdgeRoughness, RoughnessModel};
pub use spectrum::{corrugation_rms, delta_b_spectrum, CorrugationRms, CorrugationSpectrum, ModeSum};

pub(crate) fn gamma(x: f64) -> f64 {
    // Lanczos, g = 7
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    use std::f64::consts::PI;
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = G[0];
    let t = x + 7.5;
    for (i, g) in G.iter().enumerate().skip(1) {
        a += g / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}
