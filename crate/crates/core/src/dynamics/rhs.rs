use super::stencil::Stencil;
use crate::error::{Error, Result};
use crate::hermcore::{HermMatrix, MarketState, Mat};
use crate::operators::{BandOp, DissipatorSpec, LadderKernel, Model};
use crate::scalar::{Elem, Real};

/// One jump term `c · L ρ R` of the dissipator.
#[derive(Debug, Clone)]
pub struct JumpTerm<T> {
    pub weight: T,
    pub left: BandOp<T>,
    pub right: BandOp<T>,
}

/// Dissipator compiled for a fixed grid size.
///
/// The generator is `D(ρ) = Σ_t c_t L_t ρ R_t - ½{K, ρ}` with
/// `K = Σ_t c_t R_t L_t`. Terms with zero weight are dropped, so a
/// non-Gaussian spec that degenerates to the Gaussian one compiles to the
/// identical stencil.
#[derive(Debug, Clone)]
pub struct RhsModel<T: Real> {
    spec: DissipatorSpec<T>,
    n: usize,
    terms: Vec<JumpTerm<T>>,
    anticommutator: BandOp<T>,
    stencil: Stencil<T>,
}

impl<T: Real> RhsModel<T> {
    pub fn new(spec: DissipatorSpec<T>, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimTooSmall { got: n, min: 2 });
        }
        let up = BandOp::ladder_up(n)?;
        let down = BandOp::ladder_down(n)?;
        let s2 = spec.sigma2();
        let mut raw = Vec::new();
        match spec.model() {
            Model::Gaussian => {
                raw.push((s2, up.clone(), down.clone()));
                raw.push((s2, down, up));
            }
            Model::NonGaussianCoherent => {
                raw.push((s2, up.clone(), down.clone()));
                raw.push((s2, down.clone(), up.clone()));
                raw.push((spec.nu_u2(), up.clone(), up));
                raw.push((spec.nu_d2(), down.clone(), down));
            }
            Model::NonGaussianNonLocal => {
                let (hu, hd) = BandOp::dressed_ladders(&spec.kernel().trimmed(), n)?;
                raw.push((s2, hu.clone(), hd.clone()));
                raw.push((s2, hd, hu));
            }
        }
        let terms: Vec<JumpTerm<T>> = raw
            .into_iter()
            .filter(|(w, _, _)| !w.is_zero())
            .map(|(weight, left, right)| JumpTerm {
                weight,
                left,
                right,
            })
            .collect();

        let mut k = BandOp::zeros(n, 0, 0);
        for t in &terms {
            k = k.add(&t.right.mul(&t.left)?.scaled(t.weight))?;
        }
        let anticommutator = k.trimmed();

        let mut stencil = Stencil::new(n);
        for t in &terms {
            stencil.add_sandwich(t.weight, &t.left, &t.right);
        }
        stencil.add_anticommutator(&anticommutator);
        stencil.finish();

        Ok(RhsModel {
            spec,
            n,
            terms,
            anticommutator,
            stencil,
        })
    }

    pub fn spec(&self) -> &DissipatorSpec<T> {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[JumpTerm<T>] {
        &self.terms
    }

    /// `K = Σ_t c_t R_t L_t`.
    pub fn anticommutator(&self) -> &BandOp<T> {
        &self.anticommutator
    }

    /// Upper bound on the magnitude of any eigenvalue of the generator.
    pub fn rate_bound(&self) -> T {
        self.stencil.norm_bound()
    }

    /// Bound used for the explicit Euler stability condition
    /// `dt · bound < 2`: `4(σ² + ν_u² + ν_d²)`, or `4σ²(Σ|h_k|)²` with a
    /// dressed kernel.
    pub fn euler_bound(&self) -> T {
        let four = T::lit(4.0);
        match self.spec.model() {
            Model::NonGaussianNonLocal => {
                let s = self.spec.kernel().abs_sum();
                four * self.spec.sigma2() * s * s
            }
            _ => four * (self.spec.sigma2() + self.spec.nu_u2() + self.spec.nu_d2()),
        }
    }

    /// `out = D(ρ)` for Hermitian `ρ`. Only the lower triangle of the output
    /// is computed; the upper one is its mirror, so the result is exactly
    /// Hermitian.
    pub fn apply<E: Elem<Real = T>>(&self, rho: &Mat<E>, out: &mut Mat<E>) -> Result<()> {
        self.check(rho, out)?;
        self.stencil.apply_hermitian(rho, None, out);
        Ok(())
    }

    /// `out = base + c · D(ρ)` in one pass, with subnormal entries of the
    /// result flushed to zero. Inputs must be Hermitian.
    pub(crate) fn apply_affine<E: Elem<Real = T>>(
        &self,
        rho: &Mat<E>,
        base: &Mat<E>,
        c: T,
        out: &mut Mat<E>,
    ) -> Result<()> {
        self.check(rho, out)?;
        self.check(base, out)?;
        self.stencil.apply_hermitian(rho, Some((base, c)), out);
        Ok(())
    }

    /// `out = D(ρ)` computed entry by entry, for arbitrary square input.
    pub fn apply_general<E: Elem<Real = T>>(&self, rho: &Mat<E>, out: &mut Mat<E>) -> Result<()> {
        self.check(rho, out)?;
        self.stencil.apply_general(rho, out);
        Ok(())
    }

    /// `D(ρ)` of a market state, in real arithmetic when `ρ` is real.
    pub fn rhs(&self, rho: &MarketState<T>) -> Result<HermMatrix<T>> {
        let m = rho.matrix();
        if m.is_real() {
            let re = m.re_part();
            let mut out = Mat::zeros(self.n);
            self.apply(&re, &mut out)?;
            Ok(out.to_complex())
        } else {
            let mut out = Mat::zeros(self.n);
            self.apply(m, &mut out)?;
            Ok(out)
        }
    }

    fn check<E: Elem>(&self, rho: &Mat<E>, out: &Mat<E>) -> Result<()> {
        for d in [rho.dim(), out.dim()] {
            if d != self.n {
                return Err(Error::DimMismatch {
                    expected: self.n,
                    got: d,
                });
            }
        }
        Ok(())
    }
}

/// `σ² (A_u ρ A_d + A_d ρ A_u - ½{A_u A_d + A_d A_u, ρ})`.
pub fn gaussian_rhs<T: Real>(rho: &MarketState<T>, sigma2: T) -> Result<HermMatrix<T>> {
    RhsModel::new(DissipatorSpec::gaussian(sigma2)?, rho.dim())?.rhs(rho)
}

/// Gaussian dissipator plus `ν_u² (A_u ρ A_u - ½{A_u A_u, ρ})` and its
/// down-ladder mirror weighted by `ν_d²`.
pub fn ng1_rhs<T: Real>(
    rho: &MarketState<T>,
    sigma2: T,
    nu_u2: T,
    nu_d2: T,
) -> Result<HermMatrix<T>> {
    RhsModel::new(DissipatorSpec::coherent(sigma2, nu_u2, nu_d2)?, rho.dim())?.rhs(rho)
}

/// Gaussian form with the ladders dressed by `kernel`.
pub fn ng2_rhs<T: Real>(
    rho: &MarketState<T>,
    sigma2: T,
    kernel: &LadderKernel<T>,
) -> Result<HermMatrix<T>> {
    RhsModel::new(
        DissipatorSpec::non_local(sigma2, kernel.clone())?,
        rho.dim(),
    )?
    .rhs(rho)
}
