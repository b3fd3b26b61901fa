//! Price grid, ladder and convolution operators, and the environment
//! coefficients that weight them.

mod band;
pub mod dense;
mod environment;
mod grid;
mod kernel;
mod spec;

pub use band::BandOp;
pub use dense::{convolution_operator, dressed_ladders, ladder_down, ladder_up, price_operator};
pub use environment::{
    check_drift_vanishes, coefficients_from_env, Coefficients, EnvironmentState,
};
pub use grid::PriceGrid;
pub use kernel::LadderKernel;
pub use spec::{DissipatorSpec, Model};
