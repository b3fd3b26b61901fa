use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real convolution taps `h_k`, `k = -w..=w`, describing an uncertain jump
/// size for the dressed ladder operators.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderKernel<T> {
    taps: Vec<T>,
}

impl<T: Real> LadderKernel<T> {
    /// Taps listed from `h_{-w}` to `h_w`; the length must be odd.
    pub fn new(taps: Vec<T>) -> Result<Self> {
        if taps.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "kernel needs an odd number of taps, got {}",
                taps.len()
            )));
        }
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("kernel taps must be finite".into()));
        }
        Ok(LadderKernel { taps })
    }

    /// The single tap `h_0 = 1`.
    pub fn identity() -> Self {
        LadderKernel {
            taps: vec![T::one()],
        }
    }

    /// `(h_1, h_0, h_1)`.
    pub fn symmetric3(h1: T, h0: T) -> Result<Self> {
        Self::new(vec![h1, h0, h1])
    }

    /// `h_1² = h`, `h_0² = 1 - 2h`: the one-parameter family swept in the
    /// non-local jump scenario. Requires `0 <= h <= 1/2`.
    pub fn from_jump_weight(h: T) -> Result<Self> {
        if !(h >= T::zero() && h <= T::lit(0.5)) {
            return Err(Error::InvalidArgument(format!(
                "jump weight h must lie in [0, 1/2], got {h}"
            )));
        }
        Self::symmetric3(h.sqrt(), (T::one() - T::lit(2.0) * h).sqrt())
    }

    pub fn half_width(&self) -> usize {
        self.taps.len() / 2
    }

    pub fn taps(&self) -> &[T] {
        &self.taps
    }

    /// `h_k`, zero outside the support.
    pub fn tap(&self, k: isize) -> T {
        let w = self.half_width() as isize;
        if k < -w || k > w {
            T::zero()
        } else {
            self.taps[(k + w) as usize]
        }
    }

    pub fn sum_sq(&self) -> T {
        self.taps.iter().map(|&h| h * h).sum()
    }

    pub fn abs_sum(&self) -> T {
        self.taps.iter().map(|h| h.abs()).sum()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.sum_sq() - T::one()).abs() <= tol
    }

    /// Drops symmetric pairs of zero outer taps.
    pub fn trimmed(&self) -> Self {
        let mut taps = self.taps.clone();
        while taps.len() > 1 && taps[0].is_zero() && taps[taps.len() - 1].is_zero() {
            taps.remove(0);
            taps.pop();
        }
        LadderKernel { taps }
    }
}
