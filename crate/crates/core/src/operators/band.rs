use super::kernel::LadderKernel;
use crate::error::{Error, Result};
use crate::hermcore::Mat;
use crate::scalar::Real;

/// Real banded `n × n` operator stored by diagonals.
///
/// Offset `d = row - col` ranges over `lo..=hi`; `diag(d)[r]` holds the entry
/// at `(r, r - d)` and is zero wherever that column falls outside the matrix.
/// This is the fast-path representation the dissipator kernels are compiled
/// from; the dense constructors in [`super::dense`] are built independently.
#[derive(Debug, Clone, PartialEq)]
pub struct BandOp<T> {
    n: usize,
    lo: isize,
    hi: isize,
    diags: Vec<Vec<T>>,
}

impl<T: Real> BandOp<T> {
    pub fn zeros(n: usize, lo: isize, hi: isize) -> Self {
        assert!(lo <= hi);
        BandOp {
            n,
            lo,
            hi,
            diags: vec![vec![T::zero(); n]; (hi - lo + 1) as usize],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut b = Self::zeros(n, 0, 0);
        b.diags[0].iter_mut().for_each(|v| *v = T::one());
        b
    }

    /// One notch up: ones at `(i + 1, i)`.
    pub fn ladder_up(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimTooSmall { got: n, min: 2 });
        }
        let mut b = Self::zeros(n, 1, 1);
        for r in 1..n {
            b.diags[0][r] = T::one();
        }
        Ok(b)
    }

    /// One notch down: ones at `(i, i + 1)`.
    pub fn ladder_down(n: usize) -> Result<Self> {
        Ok(Self::ladder_up(n)?.transpose())
    }

    /// Truncated convolution: `h_k` at `(j + k, j)` whenever `j + k` is on the grid.
    pub fn convolution(kernel: &LadderKernel<T>, n: usize) -> Result<Self> {
        let w = kernel.half_width();
        if n < 2 * w + 1 {
            return Err(Error::KernelTooWide { half_width: w, n });
        }
        let w = w as isize;
        let mut b = Self::zeros(n, -w, w);
        for k in -w..=w {
            let h = kernel.tap(k);
            let diag = &mut b.diags[(k + w) as usize];
            for (r, v) in diag.iter_mut().enumerate() {
                let c = r as isize - k;
                if c >= 0 && (c as usize) < n {
                    *v = h;
                }
            }
        }
        Ok(b)
    }

    /// `(A_u H, (A_u H)†)`.
    pub fn dressed_ladders(kernel: &LadderKernel<T>, n: usize) -> Result<(Self, Self)> {
        let h = Self::convolution(kernel, n)?;
        let up = Self::ladder_up(n)?.mul(&h)?.trimmed();
        let down = up.transpose();
        Ok((up, down))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn offsets(&self) -> std::ops::RangeInclusive<isize> {
        self.lo..=self.hi
    }

    /// Values along offset `d` indexed by row; `None` outside the band.
    pub fn diag(&self, d: isize) -> Option<&[T]> {
        if d < self.lo || d > self.hi {
            None
        } else {
            Some(&self.diags[(d - self.lo) as usize])
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let d = r as isize - c as isize;
        self.diag(d).map_or(T::zero(), |v| v[r])
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n, -self.hi, -self.lo);
        for d in self.offsets() {
            let src = self.diag(d).unwrap();
            let dst = &mut out.diags[(-d - out.lo) as usize];
            for (r, &v) in src.iter().enumerate() {
                let c = r as isize - d;
                if c >= 0 && (c as usize) < self.n {
                    dst[c as usize] = v;
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        let n = self.n as isize;
        let mut out = Self::zeros(self.n, self.lo + rhs.lo, self.hi + rhs.hi);
        for a in self.offsets() {
            let av = self.diag(a).unwrap();
            for b in rhs.offsets() {
                let bv = rhs.diag(b).unwrap();
                let dst = &mut out.diags[(a + b - out.lo) as usize];
                for r in 0..n {
                    let m = r - a;
                    if m < 0 || m >= n {
                        continue;
                    }
                    let x = av[r as usize];
                    let y = bv[m as usize];
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    dst[r as usize] += x * y;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        let mut out = Self::zeros(self.n, self.lo.min(rhs.lo), self.hi.max(rhs.hi));
        for src in [self, rhs] {
            for d in src.offsets() {
                let dst = &mut out.diags[(d - out.lo) as usize];
                for (o, &v) in dst.iter_mut().zip(src.diag(d).unwrap()) {
                    *o += v;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: T) -> Self {
        let mut out = self.clone();
        out.diags.iter_mut().flatten().for_each(|v| *v *= c);
        out
    }

    /// Removes all-zero outer diagonals (keeps at least one).
    pub fn trimmed(&self) -> Self {
        let nonzero = |d: isize| self.diag(d).unwrap().iter().any(|v| !v.is_zero());
        let mut lo = self.lo;
        let mut hi = self.hi;
        while lo < hi && !nonzero(lo) {
            lo += 1;
        }
        while hi > lo && !nonzero(hi) {
            hi -= 1;
        }
        BandOp {
            n: self.n,
            lo,
            hi,
            diags: (lo..=hi).map(|d| self.diag(d).unwrap().to_vec()).collect(),
        }
    }

    pub fn to_dense(&self) -> Mat<T> {
        Mat::from_fn(self.n, |r, c| self.get(r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_pair_is_adjoint() {
        let up = BandOp::<f64>::ladder_up(5).unwrap();
        let down = BandOp::<f64>::ladder_down(5).unwrap();
        assert_eq!(up.to_dense().adjoint(), down.to_dense());
        assert_eq!(up.get(1, 0), 1.0);
        assert_eq!(up.get(0, 0), 0.0);
        assert_eq!(down.get(0, 1), 1.0);
    }

    #[test]
    fn band_product_matches_dense_product() {
        let k = LadderKernel::new(vec![0.2, 0.5, 0.7, 0.1, 0.3]).unwrap();
        let h = BandOp::convolution(&k, 9).unwrap();
        let up = BandOp::ladder_up(9).unwrap();
        let band = up.mul(&h).unwrap().to_dense();
        let dense = up.to_dense().matmul(&h.to_dense()).unwrap();
        assert_eq!(band, dense);
        let sum = up.add(&h).unwrap().to_dense();
        let dense_sum = up.to_dense().add_scaled(&h.to_dense(), 1.0).unwrap();
        assert_eq!(sum, dense_sum);
    }

    #[test]
    fn trimming_identity_kernel_recovers_ladder() {
        let k = LadderKernel::<f64>::from_jump_weight(0.0).unwrap();
        let (up, down) = BandOp::dressed_ladders(&k, 6).unwrap();
        assert_eq!(up, BandOp::ladder_up(6).unwrap());
        assert_eq!(down, BandOp::ladder_down(6).unwrap());
    }

    #[test]
    fn convolution_rejects_wide_kernel() {
        let k = LadderKernel::new(vec![0.1; 7]).unwrap();
        assert_eq!(
            BandOp::convolution(&k, 6),
            Err(Error::KernelTooWide {
                half_width: 3,
                n: 6
            })
        );
    }
}
