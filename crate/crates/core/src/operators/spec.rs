use super::environment::{coefficients_from_env, EnvironmentState};
use super::kernel::LadderKernel;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which generator drives the market state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Nearest-neighbour ladders, weight `σ²`.
    Gaussian,
    /// Gaussian plus the same-direction ladder pairs weighted by `ν_u²`, `ν_d²`.
    NonGaussianCoherent,
    /// Gaussian form with kernel-dressed ladders.
    NonGaussianNonLocal,
}

/// Model selector plus its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DissipatorSpec<T> {
    model: Model,
    sigma2: T,
    nu_u2: T,
    nu_d2: T,
    kernel: LadderKernel<T>,
}

fn check_weight<T: Real>(name: &str, v: T) -> Result<()> {
    if !(v >= T::zero()) || !v.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{name} must be a finite non-negative number, got {v}"
        )));
    }
    Ok(())
}

impl<T: Real> DissipatorSpec<T> {
    pub fn gaussian(sigma2: T) -> Result<Self> {
        check_weight("sigma2", sigma2)?;
        Ok(DissipatorSpec {
            model: Model::Gaussian,
            sigma2,
            nu_u2: T::zero(),
            nu_d2: T::zero(),
            kernel: LadderKernel::identity(),
        })
    }

    /// `ν_u²` and `ν_d²` must agree: the two terms are each other's adjoints
    /// and the generator only preserves Hermiticity when their weights match.
    pub fn coherent(sigma2: T, nu_u2: T, nu_d2: T) -> Result<Self> {
        check_weight("sigma2", sigma2)?;
        check_weight("nu_u2", nu_u2)?;
        check_weight("nu_d2", nu_d2)?;
        let scale = T::one().max(nu_u2.max(nu_d2));
        if (nu_u2 - nu_d2).abs() > T::lit(T::tolerances().hermitian) * scale {
            return Err(Error::InvalidArgument(format!(
                "nu_u2 ({nu_u2}) and nu_d2 ({nu_d2}) must be equal for a Hermiticity-preserving generator"
            )));
        }
        Ok(DissipatorSpec {
            model: Model::NonGaussianCoherent,
            sigma2,
            nu_u2,
            nu_d2,
            kernel: LadderKernel::identity(),
        })
    }

    /// The kernel must satisfy `Σ h_k² = 1`.
    pub fn non_local(sigma2: T, kernel: LadderKernel<T>) -> Result<Self> {
        check_weight("sigma2", sigma2)?;
        if !kernel.is_normalized(T::lit(T::tolerances().kernel_norm)) {
            return Err(Error::KernelNotNormalized {
                sum_sq: kernel.sum_sq().as_f64(),
            });
        }
        Ok(DissipatorSpec {
            model: Model::NonGaussianNonLocal,
            sigma2,
            nu_u2: T::zero(),
            nu_d2: T::zero(),
            kernel,
        })
    }

    /// Coefficients taken from an environment state. The kernel is only used
    /// by the non-local model.
    pub fn from_environment(
        model: Model,
        env: &EnvironmentState<T>,
        kernel: Option<LadderKernel<T>>,
    ) -> Result<Self> {
        let co = coefficients_from_env(env)?;
        match model {
            Model::Gaussian => Self::gaussian(co.sigma2),
            Model::NonGaussianCoherent => Self::coherent(co.sigma2, co.nu_u2, co.nu_d2),
            Model::NonGaussianNonLocal => Self::non_local(
                co.sigma2,
                kernel.ok_or_else(|| {
                    Error::InvalidArgument("non-local model needs a kernel".into())
                })?,
            ),
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn sigma2(&self) -> T {
        self.sigma2
    }

    pub fn nu_u2(&self) -> T {
        self.nu_u2
    }

    pub fn nu_d2(&self) -> T {
        self.nu_d2
    }

    pub fn kernel(&self) -> &LadderKernel<T> {
        &self.kernel
    }

    /// True when the generator reduces exactly to the Gaussian one.
    pub fn is_effectively_gaussian(&self) -> bool {
        self.nu_u2.is_zero() && self.nu_d2.is_zero() && self.kernel.trimmed().half_width() == 0
    }
}
