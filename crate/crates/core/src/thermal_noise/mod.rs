//! Thermal (Johnson) magnetic noise above a rectangular, possibly
//! anisotropic, conductor and the atom loss and decoherence rates it drives.

pub mod geometry;
pub mod materials;
pub mod rates;
pub mod spectrum;

pub use geometry::{geometry_factors, GeometryFactors, QuadratureSettings};
pub use materials::{alloy_noise_ratio, skin_depth, BlochGruneisen};
pub use rates::{
    gate_ops_figure_of_merit, heating_rate, spatial_decoherence_rate, spin_decoherence_rate, spin_flip_rate,
    HeatingTransition, RateReport,
};
pub use spectrum::{b_tensor, power_spectrum, suppression_ratio, BDiagonal, NoiseSpectrum};
