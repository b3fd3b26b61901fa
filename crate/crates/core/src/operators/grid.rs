use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered eigenvalues `x_1 < ... < x_N` of the price operator.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceGrid<T> {
    values: Vec<T>,
    spacing: Option<T>,
}

impl<T: Real> PriceGrid<T> {
    /// Arbitrary strictly increasing grid (no recorded spacing).
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimTooSmall { got: 0, min: 1 });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("grid values must be finite".into()));
        }
        if values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "grid values must be strictly increasing".into(),
            ));
        }
        Ok(PriceGrid {
            values,
            spacing: None,
        })
    }

    /// `x_i = lo + i * step`, `i = 0..n`.
    pub fn uniform(lo: T, step: T, n: usize) -> Result<Self> {
        if !(step > T::zero()) {
            return Err(Error::InvalidArgument("grid step must be positive".into()));
        }
        let values = (0..n).map(|i| lo + T::from_usize_lossy(i) * step).collect();
        let mut g = Self::new(values)?;
        g.spacing = Some(step);
        Ok(g)
    }

    /// `n` points from `lo` to `hi` inclusive: `x_i = lo + (hi - lo) i / (n - 1)`.
    pub fn from_bounds(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimTooSmall { got: n, min: 2 });
        }
        if !(hi > lo) {
            return Err(Error::InvalidArgument(
                "grid upper bound must exceed lower".into(),
            ));
        }
        let span = hi - lo;
        let denom = T::from_usize_lossy(n - 1);
        let values = (0..n)
            .map(|i| lo + span * T::from_usize_lossy(i) / denom)
            .collect();
        let mut g = Self::new(values)?;
        g.spacing = Some(span / denom);
        Ok(g)
    }

    /// 1001 points on `[-1/2, 1/2]` with spacing `1/1000`.
    pub fn standard() -> Self {
        Self::from_bounds(T::lit(-0.5), T::lit(0.5), 1001).expect("valid standard grid")
    }

    /// `n` points with spacing `step`, symmetric about zero.
    pub fn centered(n: usize, step: T) -> Result<Self> {
        let half = T::from_usize_lossy(n.saturating_sub(1)) / T::lit(2.0);
        let values = (0..n)
            .map(|i| (T::from_usize_lossy(i) - half) * step)
            .collect();
        let mut g = Self::new(values)?;
        g.spacing = Some(step);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Spacing `δx` for grids built by the uniform constructors.
    pub fn spacing(&self) -> Option<T> {
        self.spacing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_endpoints() {
        let g = PriceGrid::<f64>::standard();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.values()[0], -0.5);
        assert_eq!(g.values()[1000], 0.5);
        assert_eq!(g.values()[500], 0.0);
        assert_eq!(g.spacing(), Some(0.001));
        for (i, &x) in g.values().iter().enumerate() {
            assert!((x - (-0.5 + i as f64 / 1000.0)).abs() < 1e-16);
        }
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(PriceGrid::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(PriceGrid::new(vec![0.0, f64::NAN]).is_err());
        assert!(PriceGrid::<f64>::uniform(0.0, 0.0, 4).is_err());
    }

    #[test]
    fn centered_is_symmetric() {
        let g = PriceGrid::<f64>::centered(5, 0.5).unwrap();
        assert_eq!(g.values(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
    }
}
