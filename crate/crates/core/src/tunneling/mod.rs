//! WKB tunneling: crossing-wire barriers, lattice resolution, and loss of
//! trapped atoms to the surface.

pub mod density;
pub mod resolution;
pub mod sensitivity;
pub mod surface;
pub mod wkb;

pub use density::{thomas_fermi_density, DensityProfile};
pub use resolution::{resolution_height, resolution_height_with};
pub use sensitivity::{current_for_probability, current_sensitivity, x_wire_tunneling};
pub use surface::{surface_tunneling_rate, ColumnGrid, ColumnPotential, SideGuideTrap, SurfaceTunneling};
pub use wkb::{de_broglie_wavelength, wkb_probability, TunnelResult};
