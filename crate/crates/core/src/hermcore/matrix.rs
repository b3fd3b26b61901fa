use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Elem, Real};

/// Dense square matrix, row-major.
///
/// Used for density matrices (`Mat<Complex<T>>`, see [`HermMatrix`]), for real
/// operators built in the oracle path, and as the working buffer of the
/// dissipator kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<E> {
    dim: usize,
    data: Vec<E>,
}

/// Complex square matrix holding Hermitian operators and density matrices.
///
/// Hermiticity is checked on demand ([`Mat::hermitian_residual`]) so that
/// invalid inputs can still be represented and reported on.
pub type HermMatrix<T> = Mat<Complex<T>>;

impl<E: Elem> Mat<E> {
    pub fn zeros(dim: usize) -> Self {
        Mat {
            dim,
            data: vec![E::zero_elem(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = E::one_elem();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Mat { dim, data }
    }

    pub fn from_diag(diag: &[E]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat { dim, data })
    }

    pub fn from_vec(dim: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Mat { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [E] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<E> {
        self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diag(&self) -> Vec<E> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> E {
        let mut t = E::zero_elem();
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Dense product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == E::zero_elem() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self + c * src`.
    pub fn add_scaled(&self, src: &Self, c: E::Real) -> Result<Self> {
        self.check_dim(src)?;
        let data = self
            .data
            .iter()
            .zip(&src.data)
            .map(|(&a, &b)| a + b.scale(c))
            .collect();
        Ok(Mat {
            dim: self.dim,
            data,
        })
    }

    /// In-place `self += c * src`.
    pub fn axpy(&mut self, c: E::Real, src: &Self) -> Result<()> {
        self.check_dim(src)?;
        for (a, &b) in self.data.iter_mut().zip(&src.data) {
            *a += b.scale(c);
        }
        Ok(())
    }

    pub fn scaled(&self, c: E::Real) -> Self {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|&a| a.scale(c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Mat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> E::Real {
        self.data
            .iter()
            .fold(E::Real::zero(), |m, &v| m.max(v.modulus()))
    }

    /// Largest entry-wise difference magnitude; infinite on dim mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> E::Real {
        if self.dim != other.dim {
            return E::Real::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(E::Real::zero(), |m, (&a, &b)| m.max((a - b).modulus()))
    }

    /// Largest off-diagonal entry magnitude.
    pub fn max_offdiag(&self) -> E::Real {
        let mut m = E::Real::zero();
        for i in 0..self.dim {
            for (j, v) in self.row(i).iter().enumerate() {
                if i != j {
                    m = m.max(v.modulus());
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| {
            self.row(i)
                .iter()
                .enumerate()
                .all(|(j, &v)| i == j || v == E::zero_elem())
        })
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_residual(&self) -> E::Real {
        let mut r = E::Real::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).modulus());
            }
        }
        r
    }

    /// True when every entry has an exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|v| v.im() == E::Real::zero())
    }

    pub fn to_complex(&self) -> Mat<Complex<E::Real>> {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|v| v.to_complex()).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.all_finite())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl<T: Real> Mat<Complex<T>> {
    /// Real part, valid when [`Mat::is_real`] holds.
    pub fn re_part(&self) -> Mat<T> {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|v| v.re).collect(),
        }
    }

    pub fn from_real(m: &Mat<T>) -> Self {
        m.to_complex()
    }
}

/// `dst + c * src`, preserving Hermiticity exactly for real `c`.
pub fn add_scaled<T: Real>(
    dst: &HermMatrix<T>,
    src: &HermMatrix<T>,
    c: T,
) -> Result<HermMatrix<T>> {
    dst.add_scaled(src, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_herm(n: usize, rng: &mut ChaCha8Rng) -> HermMatrix<f64> {
        let mut m = HermMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex::new(rng.random_range(-1.0..1.0), 0.0));
            for j in i + 1..n {
                let z = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    #[test]
    fn add_zero_multiple_is_identity_op() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_herm(5, &mut rng);
        let b = random_herm(5, &mut rng);
        assert_eq!(add_scaled(&a, &b, 0.0).unwrap(), a);
    }

    #[test]
    fn add_negation_gives_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_herm(6, &mut rng);
        let neg = a.scaled(-1.0);
        let z = add_scaled(&a, &neg, 1.0).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn add_scaled_matches_elementwise_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_herm(8, &mut rng);
        let b = random_herm(8, &mut rng);
        let c = 0.37;
        let got = add_scaled(&a, &b, c).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let want = Complex::new(
                    a.get(i, j).re + c * b.get(i, j).re,
                    a.get(i, j).im + c * b.get(i, j).im,
                );
                assert!((got.get(i, j) - want).norm() < 1e-15);
            }
        }
        assert_eq!(got.hermitian_residual(), 0.0);
    }

    #[test]
    fn add_scaled_rejects_dim_mismatch() {
        let a = HermMatrix::<f64>::identity(3);
        let b = HermMatrix::<f64>::identity(4);
        assert_eq!(
            add_scaled(&a, &b, 1.0),
            Err(Error::DimMismatch {
                expected: 3,
                got: 4
            })
        );
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let r = Mat::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0]]);
        assert!(matches!(r, Err(Error::NotSquare { .. })));
    }

    #[test]
    fn matmul_against_hand_product() {
        let a = Mat::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = Mat::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = a.matmul(&b).unwrap();
        assert_eq!(p.as_slice(), &[2.0, 1.0, 4.0, 3.0]);
    }
}
