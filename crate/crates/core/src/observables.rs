//! Expectations, moments, kurtosis and entropies of market states.
//!
//! Logarithms are natural throughout. Moments are raw moments about the grid
//! origin unless the name says otherwise.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hermcore::{spectrum, HermMatrix, MarketState};
use crate::scalar::Real;

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector<T>(Vec<T>);

impl<T: Real> ProbVector<T> {
    pub fn new(p: Vec<T>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidArgument("empty probability vector".into()));
        }
        if let Some(v) = p.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "probability {v} is negative or not finite"
            )));
        }
        let sum: T = p.iter().copied().sum();
        if (sum - T::one()).abs() > T::lit(T::tolerances().prob_sum) {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(ProbVector(p))
    }

    /// Divides non-negative weights by their sum.
    pub fn normalized(w: Vec<T>) -> Result<Self> {
        let sum: T = w.iter().copied().sum();
        if !(sum > T::zero()) || !sum.is_finite() {
            return Err(Error::InvalidArgument(format!("weights sum to {sum}")));
        }
        Self::new(w.into_iter().map(|v| v / sum).collect())
    }

    /// Diagonal of a state. Rounding-level negatives are clamped to zero.
    pub fn from_state(rho: &MarketState<T>) -> Result<Self> {
        let tol = T::lit(T::tolerances().psd);
        let p: Vec<T> = rho.probabilities();
        if let Some(v) = p.iter().find(|v| **v < -tol) {
            return Err(Error::InvalidDensity(format!("negative population {v}")));
        }
        Self::new(p.into_iter().map(|v| v.max(T::zero())).collect())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

/// Raw moments of the price and the derived statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet<T> {
    pub mean: T,
    pub second_moment: T,
    pub variance: T,
    pub fourth_moment: T,
    /// `(E[X⁴] - (3E[X²])²) / (3E[X²])²`; see [`excess_kurtosis`].
    pub excess_kurtosis: T,
}

/// `Re Tr[op ρ]`, rejecting a non-negligible imaginary part.
pub fn expectation<T: Real>(rho: &MarketState<T>, op: &HermMatrix<T>) -> Result<T> {
    let m = rho.matrix();
    let n = m.dim();
    if op.dim() != n {
        return Err(Error::DimMismatch {
            expected: n,
            got: op.dim(),
        });
    }
    let mut acc = Complex::<T>::zero();
    for i in 0..n {
        for (j, &o) in op.row(i).iter().enumerate() {
            acc += o * m.get(j, i);
        }
    }
    let tol = T::lit(T::tolerances().expectation_imag) * T::one().max(acc.re.abs());
    if acc.im.abs() > tol {
        return Err(Error::ComplexExpectation {
            residue: acc.im.as_f64(),
        });
    }
    Ok(acc.re)
}

/// Moments of the state's price distribution.
pub fn moments<T: Real>(rho: &MarketState<T>) -> Result<MomentSet<T>> {
    moments_of(&rho.probabilities(), rho.grid().values())
}

/// Moments of weights `p` placed at `x`.
pub fn moments_of<T: Real>(p: &[T], x: &[T]) -> Result<MomentSet<T>> {
    let (mean, second_moment, fourth_moment) = raw_moments(p, x)?;
    Ok(MomentSet {
        mean,
        second_moment,
        variance: second_moment - mean * mean,
        fourth_moment,
        excess_kurtosis: excess_kurtosis(second_moment, fourth_moment)?,
    })
}

/// `(E[X], E[X²], E[X⁴])`.
pub(crate) fn raw_moments<T: Real>(p: &[T], x: &[T]) -> Result<(T, T, T)> {
    if p.len() != x.len() {
        return Err(Error::DimMismatch {
            expected: x.len(),
            got: p.len(),
        });
    }
    let (mut m1, mut m2, mut m4) = (T::zero(), T::zero(), T::zero());
    for (&pi, &xi) in p.iter().zip(x) {
        let x2 = xi * xi;
        m1 += pi * xi;
        m2 += pi * x2;
        m4 += pi * x2 * x2;
    }
    Ok((m1, m2, m4))
}

/// `(E[X⁴] - (3E[X²])²) / (3E[X²])²`, about the grid origin.
///
/// This is not the textbook normalisation: a centred Gaussian gives `-2/3`,
/// not `0`. [`conventional_excess_kurtosis`] gives the textbook value.
pub fn excess_kurtosis<T: Real>(second_moment: T, fourth_moment: T) -> Result<T> {
    if second_moment.is_zero() {
        return Err(Error::KurtosisUndefined);
    }
    let d = T::lit(3.0) * second_moment;
    let d2 = d * d;
    Ok((fourth_moment - d2) / d2)
}

/// Central fourth moment over squared variance, minus three.
pub fn conventional_excess_kurtosis<T: Real>(p: &[T], x: &[T]) -> Result<T> {
    let (mean, _, _) = raw_moments(p, x)?;
    let (mut c2, mut c4) = (T::zero(), T::zero());
    for (&pi, &xi) in p.iter().zip(x) {
        let d2 = (xi - mean) * (xi - mean);
        c2 += pi * d2;
        c4 += pi * d2 * d2;
    }
    if c2.is_zero() {
        return Err(Error::KurtosisUndefined);
    }
    Ok(c4 / (c2 * c2) - T::lit(3.0))
}

/// `-Σ p log p` with `0 log 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &ProbVector<T>) -> T {
    entropy_of_weights(p.as_slice(), T::zero())
}

/// `-Σ λ log λ` with each weight clamped into `[0, 1]` and weights at or
/// below `clamp` contributing zero.
pub fn entropy_of_weights<T: Real>(w: &[T], clamp: T) -> T {
    let mut h = T::zero();
    for &v in w {
        let v = v.min(T::one());
        if v > clamp && v > T::zero() {
            h -= v * v.ln();
        }
    }
    h
}

/// `-Tr[ρ log ρ]` from the eigenvalues of `ρ`.
pub fn von_neumann_entropy<T: Real>(rho: &MarketState<T>) -> Result<T> {
    let s = spectrum(rho.matrix())?;
    Ok(entropy_of_weights(
        s.values(),
        T::lit(T::tolerances().eig_clamp),
    ))
}

/// `Tr[ρ²]`, which is one exactly for pure states.
pub fn purity<T: Real>(rho: &MarketState<T>) -> T {
    rho.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Drops every off-diagonal entry. The price distribution is unchanged.
pub fn pinch_diagonal<T: Real>(rho: &MarketState<T>) -> MarketState<T> {
    let d: Vec<Complex<T>> = rho
        .matrix()
        .diag()
        .into_iter()
        .map(|z| Complex::new(z.re, T::zero()))
        .collect();
    MarketState::new_unchecked(HermMatrix::from_diag(&d), rho.grid().clone())
}
