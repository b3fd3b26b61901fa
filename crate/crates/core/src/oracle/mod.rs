//! Brute-force references kept independent of the fast path.
//!
//! Nothing in `dynamics` depends on this module. It exists so that the
//! banded kernels, the integrator and the moment formulas can be checked
//! against code that shares no shortcuts with them.

mod random;
mod rates;
mod reference;
mod walk;

pub use random::{random_density, random_density_supported, random_state};
pub use rates::{variance_rate_check, RateCheck, RATE_SUPPORT_MARGIN};
pub use reference::{dense_dissipator_reference, REFERENCE_MAX_DIM};
pub use walk::{classical_walk, WalkPath, WalkSpec};
