use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermcore::{validate_density, HermMatrix};
use crate::scalar::Real;

/// Environment density matrix `r_lm` on `K` levels with coupling constant `κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentState<T: Real> {
    r: HermMatrix<T>,
    kappa: T,
}

/// Markovian dissipator weights extracted from an environment state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients<T> {
    pub sigma2: T,
    pub nu_u2: T,
    pub nu_d2: T,
}

impl<T: Real> EnvironmentState<T> {
    pub fn new(r: HermMatrix<T>, kappa: T) -> Result<Self> {
        if r.dim() < 2 {
            return Err(Error::DimTooSmall {
                got: r.dim(),
                min: 2,
            });
        }
        if !(kappa > T::zero()) || !kappa.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coupling constant must be positive, got {kappa}"
            )));
        }
        let report = validate_density(&r, &T::tolerances());
        if !report.is_valid() {
            return Err(Error::InvalidDensity(report.failures().join("; ")));
        }
        Ok(EnvironmentState { r, kappa })
    }

    /// `r = I / K`: the maximum-entropy environment.
    pub fn maximally_mixed(k: usize, kappa: T) -> Result<Self> {
        let r = HermMatrix::<T>::identity(k).scaled(T::one() / T::from_usize_lossy(k));
        Self::new(r, kappa)
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn matrix(&self) -> &HermMatrix<T> {
        &self.r
    }

    /// `Σ_l r_{l, l+offset}` over the valid range, for `offset >= 0`.
    fn band_sum(&self, row_off: usize, col_off: usize) -> Complex<T> {
        let k = self.dim();
        let width = row_off.max(col_off);
        let mut s = Complex::new(T::zero(), T::zero());
        for l in 0..k - width {
            s += self.r.get(l + row_off, l + col_off);
        }
        s
    }
}

/// `σ² = κ Σ_{l<K} r_ll`, `ν_u² = 2κ Σ r_{l,l+2}`, `ν_d² = 2κ Σ r_{l+2,l}`.
///
/// The second-band sums must be real; complex sums are rejected rather than
/// truncated to their real part.
pub fn coefficients_from_env<T: Real>(env: &EnvironmentState<T>) -> Result<Coefficients<T>> {
    let k = env.dim();
    let kappa = env.kappa();
    let tol = T::lit(T::tolerances().band_sum_imag);
    let mut diag = T::zero();
    for l in 0..k - 1 {
        diag += env.r.get(l, l).re;
    }
    let up = env.band_sum(0, 2);
    let down = env.band_sum(2, 0);
    if up.im.abs() > tol || down.im.abs() > tol {
        return Err(Error::UnsupportedEnvironment(format!(
            "second-band sums must be real, got {} and {}",
            up, down
        )));
    }
    let two = T::lit(2.0);
    Ok(Coefficients {
        sigma2: kappa * diag,
        nu_u2: two * kappa * up.re,
        nu_d2: two * kappa * down.re,
    })
}

/// True when both first-band sums `Σ r_{l,l+1}` and `Σ r_{l+1,l}` vanish, so the
/// inhomogeneous drift term of the reduced dynamics is zero.
pub fn check_drift_vanishes<T: Real>(env: &EnvironmentState<T>) -> bool {
    let tol = T::lit(T::tolerances().drift);
    env.band_sum(0, 1).norm() <= tol && env.band_sum(1, 0).norm() <= tol
}
