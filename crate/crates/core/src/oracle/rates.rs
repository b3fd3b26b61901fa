use num_complex::Complex;

use crate::dynamics::RhsModel;
use crate::error::{Error, Result};
use crate::hermcore::MarketState;
use crate::operators::{DissipatorSpec, Model};
use crate::scalar::Real;

/// Entries whose row or column lies within this many sites of either edge
/// must vanish for the interior element sums to be exact.
pub const RATE_SUPPORT_MARGIN: usize = 4;

const FD_STEP: f64 = 1e-8;

/// Closed-form and finite-difference values of `d E[X²] / dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCheck<T> {
    pub analytic: T,
    pub finite_difference: T,
    pub abs_diff: T,
}

impl<T: Real> RateCheck<T> {
    /// `abs_diff / |analytic|`, or `abs_diff` itself when the rate is zero.
    pub fn rel_diff(&self) -> T {
        if self.analytic.is_zero() {
            self.abs_diff
        } else {
            self.abs_diff / self.analytic.abs()
        }
    }
}

fn check_support<T: Real>(rho: &MarketState<T>) -> Result<()> {
    let n = rho.dim();
    let m = RATE_SUPPORT_MARGIN;
    if n < 2 * m + 1 {
        return Err(Error::DimTooSmall {
            got: n,
            min: 2 * m + 1,
        });
    }
    let edge = |k: usize| k < m || k >= n - m;
    let a = rho.matrix();
    for i in 0..n {
        for j in 0..n {
            if (edge(i) || edge(j)) && a.get(i, j) != Complex::new(T::zero(), T::zero()) {
                return Err(Error::InvalidArgument(format!(
                    "state has weight at ({i}, {j}), within {m} sites of the boundary"
                )));
            }
        }
    }
    Ok(())
}

/// The rate of `E[X²]` written as element sums over the interior. Indices
/// below are zero-based, so the interior sums run over `1..n-1` and
/// `2..n-2`.
fn analytic_rate<T: Real>(rho: &MarketState<T>, spec: &DissipatorSpec<T>) -> Result<T> {
    let n = rho.dim();
    let x = rho.grid().values();
    let a = |i: usize, j: usize| rho.matrix().get(i, j).re;
    let s2 = spec.sigma2();
    let x2 = |i: usize| x[i] * x[i];
    let two = T::lit(2.0);
    let half = T::lit(0.5);

    let near = |i: usize| a(i + 1, i + 1) + a(i - 1, i - 1) - two * a(i, i);
    let far = |i: usize| a(i + 2, i + 2) + a(i - 2, i - 2) - two * a(i, i);

    match spec.model() {
        Model::Gaussian => Ok(s2 * (1..n - 1).map(|i| x2(i) * near(i)).sum::<T>()),
        Model::NonGaussianCoherent => {
            let base = s2 * (1..n - 1).map(|i| x2(i) * near(i)).sum::<T>();
            let up: T = (2..n - 2)
                .map(|i| x2(i) * (a(i - 1, i + 1) - half * (a(i - 2, i) + a(i, i + 2))))
                .sum();
            let down: T = (2..n - 2)
                .map(|i| x2(i) * (a(i + 1, i - 1) - half * (a(i, i - 2) + a(i + 2, i))))
                .sum();
            Ok(base + spec.nu_u2() * up + spec.nu_d2() * down)
        }
        Model::NonGaussianNonLocal => {
            let k = spec.kernel().trimmed();
            if k.half_width() > 1 || k.tap(-1) != k.tap(1) {
                return Err(Error::InvalidArgument(
                    "closed-form rate needs a symmetric kernel of at most three taps".into(),
                ));
            }
            let (h0, h1) = (k.tap(0), k.tap(1));
            let near_sum: T = (1..n - 1).map(|i| x2(i) * near(i)).sum();
            let far_sum: T = (2..n - 2).map(|i| x2(i) * far(i)).sum();
            let cross: T = (2..n - 2)
                .map(|i| {
                    x2(i)
                        * (a(i + 1, i + 2) + a(i + 2, i + 1) + a(i - 1, i - 2) + a(i - 2, i - 1)
                            - (a(i, i + 1) + a(i + 1, i) + a(i, i - 1) + a(i - 1, i)))
                })
                .sum();
            Ok(s2 * (h0 * h0 * near_sum + h1 * h1 * far_sum + h0 * h1 * cross))
        }
    }
}

/// Compares the closed-form rate of `E[X²]` with a first-order difference
/// quotient of the fast right-hand side. The state must vanish within
/// [`RATE_SUPPORT_MARGIN`] sites of the boundary.
pub fn variance_rate_check<T: Real>(
    rho: &MarketState<T>,
    spec: &DissipatorSpec<T>,
) -> Result<RateCheck<T>> {
    check_support(rho)?;
    let analytic = analytic_rate(rho, spec)?;
    let model = RhsModel::new(spec.clone(), rho.dim())?;
    let d = model.rhs(rho)?;
    let dt = T::lit(FD_STEP);
    let x = rho.grid().values();
    // Per-site differences avoid cancelling two O(1) second moments.
    let finite_difference: T = (0..rho.dim())
        .map(|i| {
            let before = rho.matrix().get(i, i).re;
            let after = before + dt * d.get(i, i).re;
            x[i] * x[i] * (after - before)
        })
        .sum::<T>()
        / dt;
    Ok(RateCheck {
        analytic,
        finite_difference,
        abs_diff: (analytic - finite_difference).abs(),
    })
}
