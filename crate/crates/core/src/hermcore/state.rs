use std::sync::Arc;

use num_complex::Complex;

use super::matrix::HermMatrix;
use super::validate::{validate_density, ValidationReport};
use crate::error::{Error, Result};
use crate::operators::PriceGrid;
use crate::scalar::Real;
use crate::Tolerances;

/// Density matrix of the market on a price grid.
///
/// Construction enforces Hermiticity and unit trace; positive
/// semidefiniteness is checked on demand with [`MarketState::validate`].
#[derive(Debug, Clone)]
pub struct MarketState<T: Real> {
    matrix: HermMatrix<T>,
    grid: Arc<PriceGrid<T>>,
}

impl<T: Real> MarketState<T> {
    pub fn new(matrix: HermMatrix<T>, grid: Arc<PriceGrid<T>>) -> Result<Self> {
        Self::with_tolerances(matrix, grid, &T::tolerances())
    }

    pub fn with_tolerances(
        matrix: HermMatrix<T>,
        grid: Arc<PriceGrid<T>>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if matrix.dim() != grid.len() {
            return Err(Error::DimMismatch {
                expected: grid.len(),
                got: matrix.dim(),
            });
        }
        let res = matrix.hermitian_residual();
        if !(res <= T::lit(tol.hermitian)) {
            return Err(Error::InvalidDensity(format!("Hermitian residual {res}")));
        }
        let tr_err = (matrix.trace() - Complex::new(T::one(), T::zero())).norm();
        if !(tr_err <= T::lit(tol.trace)) {
            return Err(Error::InvalidDensity(format!("trace error {tr_err}")));
        }
        Ok(MarketState { matrix, grid })
    }

    /// Skips all checks; for states produced by trusted numerical paths.
    pub(crate) fn new_unchecked(matrix: HermMatrix<T>, grid: Arc<PriceGrid<T>>) -> Self {
        MarketState { matrix, grid }
    }

    pub fn matrix(&self) -> &HermMatrix<T> {
        &self.matrix
    }

    pub fn grid(&self) -> &Arc<PriceGrid<T>> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_matrix(self) -> HermMatrix<T> {
        self.matrix
    }

    /// Real diagonal: the probability law of the price on the grid.
    pub fn probabilities(&self) -> Vec<T> {
        self.matrix.diag().iter().map(|z| z.re).collect()
    }

    pub fn validate(&self, tol: &Tolerances) -> ValidationReport<T> {
        validate_density(&self.matrix, tol)
    }
}
