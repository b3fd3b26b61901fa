//! Initial market states and the three simulation sweeps.
//!
//! The initial state interpolates between a classical state, diagonal in the
//! price basis, and the pure state with the same price distribution:
//! `ρ(θ) = θ diag(p) + (1 - θ) √p √pᵀ`. Every `θ` gives the same diagonal.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::dynamics::{evolve, IntegratorConfig, RhsModel, Trajectory};
use crate::error::{Error, Result};
use crate::hermcore::{HermMatrix, MarketState};
use crate::observables::von_neumann_entropy;
use crate::operators::{DissipatorSpec, LadderKernel, PriceGrid};
use crate::scalar::Real;

/// Largest jump weight `h` swept in the non-local scenario.
pub const MAX_JUMP_WEIGHT: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct InitialStateSpec<T> {
    pub n: usize,
    /// Standard deviation of the Gaussian price profile.
    pub width: T,
    /// Weight of the classical component, in `[0, 1]`.
    pub theta: T,
    /// `None` selects `n` evenly spaced points on `[-1/2, 1/2]`.
    pub grid: Option<Arc<PriceGrid<T>>>,
}

impl<T: Real> Default for InitialStateSpec<T> {
    fn default() -> Self {
        InitialStateSpec {
            n: 1001,
            width: T::lit(0.005),
            theta: T::one(),
            grid: None,
        }
    }
}

impl<T: Real> InitialStateSpec<T> {
    pub fn with_theta(&self, theta: T) -> Self {
        InitialStateSpec {
            theta,
            ..self.clone()
        }
    }

    fn resolve_grid(&self) -> Result<Arc<PriceGrid<T>>> {
        match &self.grid {
            Some(g) if g.len() != self.n => Err(Error::DimMismatch {
                expected: self.n,
                got: g.len(),
            }),
            Some(g) => Ok(g.clone()),
            None => Ok(Arc::new(PriceGrid::from_bounds(
                T::lit(-0.5),
                T::lit(0.5),
                self.n,
            )?)),
        }
    }
}

fn check_theta<T: Real>(theta: T) -> Result<()> {
    if theta >= T::zero() && theta <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "theta must lie in [0, 1], got {theta}"
        )))
    }
}

/// Normalized Gaussian weights `p_i ∝ exp(-x_i² / 2w²)`.
pub fn gaussian_profile<T: Real>(x: &[T], width: T) -> Result<Vec<T>> {
    if !(width > T::zero()) || !width.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "width must be positive, got {width}"
        )));
    }
    let two_w2 = T::lit(2.0) * width * width;
    let w: Vec<T> = x.iter().map(|&xi| (-(xi * xi) / two_w2).exp()).collect();
    let sum: T = w.iter().copied().sum();
    if !(sum > T::zero()) {
        return Err(Error::InvalidArgument(
            "price profile underflows on every grid point".into(),
        ));
    }
    Ok(w.into_iter().map(|v| v / sum).collect())
}

pub fn build_initial_state<T: Real>(spec: &InitialStateSpec<T>) -> Result<MarketState<T>> {
    check_theta(spec.theta)?;
    let grid = spec.resolve_grid()?;
    let p = gaussian_profile(grid.values(), spec.width)?;
    let s: Vec<T> = p.iter().map(|v| v.sqrt()).collect();
    let theta = spec.theta;
    let quantum = T::one() - theta;
    let n = spec.n;
    let mut m = HermMatrix::<T>::zeros(n);
    {
        let data = m.as_mut_slice();
        for i in 0..n {
            for j in 0..n {
                data[i * n + j].re = if i == j { p[i] } else { quantum * s[i] * s[j] };
            }
        }
    }
    MarketState::new(m, grid)
}

/// `(θ, S(ρ(θ)))` for each requested `θ`.
pub fn initial_entropy_curve<T: Real>(
    base: &InitialStateSpec<T>,
    thetas: &[T],
) -> Result<Vec<(T, T)>> {
    thetas
        .par_iter()
        .map(|&theta| {
            let rho = build_initial_state(&base.with_theta(theta))?;
            Ok((theta, von_neumann_entropy(&rho)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sim {
    /// Gaussian generator, swept over `θ`.
    Gaussian,
    /// Coherent two-notch jumps, swept over `ν_u² = ν_d²`.
    Coherent,
    /// Kernel-dressed ladders, swept over the jump weight `h`.
    NonLocal,
}

/// Settings shared by every row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T> {
    pub initial: InitialStateSpec<T>,
    pub integrator: IntegratorConfig<T>,
    pub sigma2: T,
    /// Environment dimension. Carried as metadata: the coefficients are
    /// given directly.
    pub env_dim: usize,
    /// Keep each row's final price distribution.
    pub keep_distribution: bool,
}

impl<T: Real> Default for ScenarioConfig<T> {
    fn default() -> Self {
        ScenarioConfig {
            initial: InitialStateSpec::default(),
            integrator: IntegratorConfig::default(),
            sigma2: T::lit(400.0),
            env_dim: 11,
            keep_distribution: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub sim: Sim,
    pub values: Vec<T>,
    /// Initial `θ` for the coherent and non-local sweeps; ignored by the
    /// Gaussian sweep, whose values are the `θ`s.
    pub theta: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub value: T,
    pub initial_entropy: T,
    pub final_entropy: T,
    pub entropy_gain: T,
    pub final_variance: T,
    pub final_kurtosis: T,
    pub runtime_secs: f64,
    pub trajectory: Trajectory<T>,
    pub distribution: Option<Vec<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub sim: Sim,
    /// In the order of the sweep values.
    pub rows: Vec<SweepRow<T>>,
}

fn run_row<T: Real>(
    value: T,
    theta: T,
    spec: DissipatorSpec<T>,
    cfg: &ScenarioConfig<T>,
) -> Result<(SweepRow<T>, MarketState<T>)> {
    let start = Instant::now();
    let rho0 = build_initial_state(&cfg.initial.with_theta(theta))?;
    let model = RhsModel::new(spec, rho0.dim())?;
    let (fin, trajectory) = evolve(&rho0, &model, &cfg.integrator)?;
    let first = trajectory.checkpoints.first().expect("step 0 is recorded");
    let last = trajectory.last().expect("final step is recorded");
    let row = SweepRow {
        value,
        initial_entropy: first.vn_entropy,
        final_entropy: last.vn_entropy,
        entropy_gain: last.vn_entropy - first.vn_entropy,
        final_variance: last.variance,
        final_kurtosis: last.excess_kurtosis,
        runtime_secs: start.elapsed().as_secs_f64(),
        distribution: cfg.keep_distribution.then(|| fin.probabilities()),
        trajectory,
    };
    Ok((row, fin))
}

/// One run per value, in parallel, with rows returned in input order.
/// `setup` maps a value to its generator and initial `θ`.
pub fn run_rows<T, F>(values: &[T], cfg: &ScenarioConfig<T>, setup: F) -> Result<Vec<SweepRow<T>>>
where
    T: Real,
    F: Fn(T) -> Result<(DissipatorSpec<T>, T)> + Sync,
{
    values
        .par_iter()
        .map(|&v| {
            let (spec, theta) = setup(v)?;
            Ok(run_row(v, theta, spec, cfg)?.0)
        })
        .collect()
}

/// Gaussian runs, one per `θ`. A classical start must stay diagonal.
pub fn run_sim1<T: Real>(thetas: &[T], cfg: &ScenarioConfig<T>) -> Result<SweepResult<T>> {
    thetas.iter().try_for_each(|&t| check_theta(t))?;
    let rows = thetas
        .par_iter()
        .map(|&theta| {
            let (row, fin) = run_row(theta, theta, DissipatorSpec::gaussian(cfg.sigma2)?, cfg)?;
            let off = fin.matrix().max_offdiag();
            if theta == T::one() && off > T::lit(T::tolerances().hermitian) {
                return Err(Error::NumericalFailure {
                    step: cfg.integrator.steps,
                    reason: format!("classical start developed off-diagonal weight {off}"),
                });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        sim: Sim::Gaussian,
        rows,
    })
}

/// Coherent runs with `ν_u² = ν_d² = value`, each value in `[0, σ²]`.
pub fn run_sim2<T: Real>(
    nu_values: &[T],
    theta: T,
    cfg: &ScenarioConfig<T>,
) -> Result<SweepResult<T>> {
    check_theta(theta)?;
    if let Some(v) = nu_values
        .iter()
        .find(|v| !(**v >= T::zero() && **v <= cfg.sigma2))
    {
        return Err(Error::InvalidArgument(format!(
            "jump weight {v} outside [0, {}]",
            cfg.sigma2
        )));
    }
    let rows = run_rows(nu_values, cfg, |nu2| {
        Ok((DissipatorSpec::coherent(cfg.sigma2, nu2, nu2)?, theta))
    })?;
    Ok(SweepResult {
        sim: Sim::Coherent,
        rows,
    })
}

/// Non-local runs with kernel `(√h, √(1 - 2h), √h)`, each `h` in `[0, 0.2]`.
pub fn run_sim3<T: Real>(
    h_values: &[T],
    theta: T,
    cfg: &ScenarioConfig<T>,
) -> Result<SweepResult<T>> {
    check_theta(theta)?;
    if let Some(h) = h_values
        .iter()
        .find(|h| !(**h >= T::zero() && **h <= T::lit(MAX_JUMP_WEIGHT)))
    {
        return Err(Error::InvalidArgument(format!(
            "jump weight h = {h} outside [0, {MAX_JUMP_WEIGHT}]"
        )));
    }
    let rows = run_rows(h_values, cfg, |h| {
        let kernel = LadderKernel::from_jump_weight(h)?;
        Ok((DissipatorSpec::non_local(cfg.sigma2, kernel)?, theta))
    })?;
    Ok(SweepResult {
        sim: Sim::NonLocal,
        rows,
    })
}

pub fn run_sweep<T: Real>(spec: &SweepSpec<T>, cfg: &ScenarioConfig<T>) -> Result<SweepResult<T>> {
    match spec.sim {
        Sim::Gaussian => run_sim1(&spec.values, cfg),
        Sim::Coherent => run_sim2(&spec.values, spec.theta, cfg),
        Sim::NonLocal => run_sim3(&spec.values, spec.theta, cfg),
    }
}
