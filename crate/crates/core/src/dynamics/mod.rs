//! Lindblad right-hand sides on the banded fast path and the fixed-step
//! integrator with trace and positivity monitoring.

mod integrate;
mod rhs;
mod stencil;

pub use integrate::{euler_increment, evolve, Checkpoint, IntegratorConfig, Method, Trajectory};
pub use rhs::{gaussian_rhs, ng1_rhs, ng2_rhs, JumpTerm, RhsModel};
