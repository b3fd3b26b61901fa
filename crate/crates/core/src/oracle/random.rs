use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hermcore::{HermMatrix, MarketState};
use crate::operators::PriceGrid;
use crate::scalar::Real;

/// `G G† / Tr(G G†)` with i.i.d. complex Gaussian `G`: full rank almost surely.
pub fn random_density<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermMatrix<T> {
    random_density_supported(n, 0..n, rng).expect("full support is valid")
}

/// Like [`random_density`] but with every entry outside `support × support`
/// exactly zero.
pub fn random_density_supported<T: Real, R: Rng + ?Sized>(
    n: usize,
    support: std::ops::Range<usize>,
    rng: &mut R,
) -> Result<HermMatrix<T>> {
    if support.is_empty() || support.end > n {
        return Err(Error::InvalidArgument(format!(
            "support {support:?} is empty or exceeds dimension {n}"
        )));
    }
    let mut g = HermMatrix::<T>::zeros(n);
    for i in support.clone() {
        for j in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g.set(i, j, Complex::new(T::lit(re), T::lit(im)));
        }
    }
    let mut rho = g.matmul(&g.adjoint())?;
    let tr = rho.trace().re;
    rho = rho.scaled(T::one() / tr);
    // Exact Hermiticity: the product is Hermitian only up to rounding.
    for i in 0..n {
        let d = rho.get(i, i).re;
        rho.set(i, i, Complex::new(d, T::zero()));
        for j in 0..i {
            let v = rho.get(i, j);
            rho.set(j, i, v.conj());
        }
    }
    Ok(rho)
}

/// Random state on a centred uniform grid with spacing `step`.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    n: usize,
    step: T,
    rng: &mut R,
) -> Result<MarketState<T>> {
    let grid = Arc::new(PriceGrid::centered(n, step)?);
    MarketState::new(random_density(n, rng), grid)
}
