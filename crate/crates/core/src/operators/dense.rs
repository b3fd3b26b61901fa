//! Dense operators built literally from their index definitions.
//!
//! These are the reference path: they share no code with [`super::BandOp`].

use super::grid::PriceGrid;
use super::kernel::LadderKernel;
use crate::error::{Error, Result};
use crate::hermcore::Mat;
use crate::scalar::Real;

/// `X = Σ x_i |e_i⟩⟨e_i|`.
pub fn price_operator<T: Real>(grid: &PriceGrid<T>) -> Mat<T> {
    Mat::from_diag(grid.values())
}

/// `A_u = Σ_{i=1}^{N-1} |e_{i+1}⟩⟨e_i|`.
pub fn ladder_up<T: Real>(n: usize) -> Result<Mat<T>> {
    if n < 2 {
        return Err(Error::DimTooSmall { got: n, min: 2 });
    }
    let mut a = Mat::zeros(n);
    for i in 0..n - 1 {
        a.set(i + 1, i, T::one());
    }
    Ok(a)
}

/// `A_d = A_u†`.
pub fn ladder_down<T: Real>(n: usize) -> Result<Mat<T>> {
    Ok(ladder_up::<T>(n)?.adjoint())
}

/// `H = Σ_j Σ_{k=1-j}^{N-j} h_k |e_{j+k}⟩⟨e_j|` (1-based `j`).
pub fn convolution_operator<T: Real>(kernel: &LadderKernel<T>, n: usize) -> Result<Mat<T>> {
    let w = kernel.half_width();
    if n < 2 * w + 1 {
        return Err(Error::KernelTooWide { half_width: w, n });
    }
    let mut h = Mat::zeros(n);
    for j in 1..=n as isize {
        for k in (1 - j)..=(n as isize - j) {
            let tap = kernel.tap(k);
            if tap != T::zero() {
                h.set((j + k - 1) as usize, (j - 1) as usize, tap);
            }
        }
    }
    Ok(h)
}

/// `(A_u^H, A_d^H) = (A_u H, (A_u H)†)`.
pub fn dressed_ladders<T: Real>(kernel: &LadderKernel<T>, n: usize) -> Result<(Mat<T>, Mat<T>)> {
    let h = convolution_operator(kernel, n)?;
    let up = ladder_up::<T>(n)?.matmul(&h)?;
    let down = up.adjoint();
    Ok((up, down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::BandOp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn price_operator_is_diagonal_grid() {
        let g = PriceGrid::new(vec![-1.0, 0.0, 1.0]).unwrap();
        let x = price_operator(&g);
        assert_eq!(x, Mat::from_diag(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn ladder_up_three_sites() {
        let a = ladder_up::<f64>(3).unwrap();
        let mut expected = Mat::zeros(3);
        expected.set(1, 0, 1.0);
        expected.set(2, 1, 1.0);
        assert_eq!(a, expected);
        // A_u |e_N> = 0
        assert!((0..3).all(|i| a.get(i, 2) == 0.0));
        assert!(ladder_up::<f64>(1).is_err());
    }

    #[test]
    fn down_up_product_drops_top_level() {
        let n = 6;
        let p = ladder_down::<f64>(n)
            .unwrap()
            .matmul(&ladder_up(n).unwrap())
            .unwrap();
        let mut d = vec![1.0; n];
        d[n - 1] = 0.0;
        assert_eq!(p, Mat::from_diag(&d));
    }

    #[test]
    fn identity_kernel_gives_identity() {
        for n in [1, 2, 5, 17] {
            let h = convolution_operator(&LadderKernel::<f64>::identity(), n).unwrap();
            assert_eq!(h, Mat::identity(n));
        }
    }

    #[test]
    fn three_tap_columns() {
        let (h1, h0) = (0.3, 0.9);
        let k = LadderKernel::symmetric3(h1, h0).unwrap();
        let h = convolution_operator(&k, 6).unwrap();
        // interior column j = 3 (0-based 2)
        assert_eq!(h.get(1, 2), h1);
        assert_eq!(h.get(2, 2), h0);
        assert_eq!(h.get(3, 2), h1);
        // boundary column j = 1 keeps only k >= 0
        assert_eq!(h.get(0, 0), h0);
        assert_eq!(h.get(1, 0), h1);
        assert_eq!((2..6).map(|i| h.get(i, 0)).sum::<f64>(), 0.0);
    }

    #[test]
    fn dressed_down_ladder_row_pattern() {
        // A_d^H = Σ h_0|e_i⟩⟨e_{i+1}| + h_{-1}|e_{i+1}⟩⟨e_{i+1}| + h_1|e_{i-1}⟩⟨e_{i+1}|
        let (h1, h0) = (0.4, 0.8);
        let k = LadderKernel::symmetric3(h1, h0).unwrap();
        let n = 7;
        let (_, down) = dressed_ladders(&k, n).unwrap();
        let mut expected = Mat::<f64>::zeros(n);
        for i in 0..n - 1 {
            expected.set(i, i + 1, h0);
            expected.set(i + 1, i + 1, h1);
        }
        for i in 1..n - 1 {
            expected.set(i - 1, i + 1, h1);
        }
        assert_eq!(down, expected);
    }

    #[test]
    fn identity_kernel_dressing_is_plain_ladder() {
        let (up, down) = dressed_ladders(&LadderKernel::<f64>::identity(), 5).unwrap();
        assert_eq!(up, ladder_up(5).unwrap());
        assert_eq!(down, ladder_down(5).unwrap());
    }

    #[test]
    fn random_kernel_adjoint_relation_and_band_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let taps: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
            let k = LadderKernel::new(taps).unwrap();
            let (up, down) = dressed_ladders(&k, 8).unwrap();
            assert_eq!(up.adjoint().sub(&down).unwrap().max_abs(), 0.0);
            let (bup, bdown) = BandOp::dressed_ladders(&k, 8).unwrap();
            assert_eq!(bup.to_dense(), up);
            assert_eq!(bdown.to_dense(), down);
            assert_eq!(
                BandOp::convolution(&k, 8).unwrap().to_dense(),
                convolution_operator(&k, 8).unwrap()
            );
        }
    }
}
