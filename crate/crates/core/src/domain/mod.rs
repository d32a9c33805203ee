//! Shared vocabulary: constants, species, geometry, unit handling.

pub mod constants;
pub mod context;
pub mod geometry;
pub mod species;
pub mod units;

pub use constants::PhysicalConstants;
pub use context::TrapContext;
pub use geometry::{ConductivityTensor, Layer, LayerStack, WireGeometry};
pub use species::{AtomSpecies, HyperfineState};
pub use units::convert_units;
