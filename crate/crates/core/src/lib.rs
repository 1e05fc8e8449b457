//! Casimir interaction between two perfectly conducting concentric
//! cylinders of radii `a < b`, expressed through the ratio `α = b/a`.

pub mod error;
pub mod exact;
pub mod observables;
pub mod proximity;
pub mod quadrature;
pub mod semiclassical;
pub mod specfun;

pub use error::{CasimirError, Result};
