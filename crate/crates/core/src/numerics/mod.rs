//! Small numerical kernels shared by the physics modules.

pub mod hermite;
pub mod quad;
pub mod roots;
pub mod spline;

pub use quad::{integrate, integrate_vec, QuadOptions};
pub use hermite::gauss_hermite;
pub use roots::brent;
