//! Device modeling for atom chips built from thin current-carrying wires.
//!
//! Everything is SI internally. Conversions to the display units used in
//! tables and configs (μm, mA, G, nm) live in [`domain::units`].

pub mod casimir_polder;
pub mod corrugation;
pub mod domain;
pub mod error;
pub mod magnetostatics;
pub mod nanowire;
pub mod numerics;
pub mod par;
pub mod scenario;
pub mod thermal_noise;
pub mod tunneling;

pub use error::{Error, Result};
