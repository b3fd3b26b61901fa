//! Complex Hermitian matrix storage, density-matrix validation and the
//! Hermitian eigensolver.

mod eigen;
mod matrix;
mod state;
mod validate;

pub use eigen::{eig_hermitian, eigvals_hermitian, spectrum, EigenDecomposition, Spectrum};
pub use matrix::{add_scaled, HermMatrix, Mat};
pub use state::MarketState;
pub use validate::{validate_density, ValidationReport};
