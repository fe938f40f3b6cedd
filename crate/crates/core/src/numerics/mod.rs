//! Quadrature and root finding shared by the solvers.

pub mod quad;
pub mod root;

pub use quad::{integrate, integrate_pieces, Integral, QuadConfig};
pub use root::{bisect_secant, Root, RootConfig};
