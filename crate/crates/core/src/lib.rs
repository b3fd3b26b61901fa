//! Open-system dynamics of a discretised market density matrix.
//!
//! The market is a density matrix on a price grid. It evolves under one of
//! three Lindblad-type generators: Gaussian diffusion, a coherent
//! non-Gaussian variant with two-notch jumps, and a non-local variant whose
//! ladders are dressed by a convolution kernel. Entropy, moments and kurtosis
//! are tracked along the way.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` aliases below are what most callers want.

// NaN must fail range checks, hence negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dynamics;
pub mod error;
pub mod hermcore;
pub mod observables;
pub mod operators;
pub mod oracle;
pub mod scalar;
pub mod scenarios;
mod tolerance;

pub use error::{Error, Result};
pub use scalar::{Elem, Real};
pub use tolerance::Tolerances;

pub type HermMatrixF64 = hermcore::HermMatrix<f64>;
pub type HermMatrixF32 = hermcore::HermMatrix<f32>;
pub type MarketStateF64 = hermcore::MarketState<f64>;
pub type MarketStateF32 = hermcore::MarketState<f32>;
pub type PriceGridF64 = operators::PriceGrid<f64>;
pub type LadderKernelF64 = operators::LadderKernel<f64>;
pub type DissipatorSpecF64 = operators::DissipatorSpec<f64>;
pub type RhsModelF64 = dynamics::RhsModel<f64>;
pub type IntegratorConfigF64 = dynamics::IntegratorConfig<f64>;
pub type TrajectoryF64 = dynamics::Trajectory<f64>;
