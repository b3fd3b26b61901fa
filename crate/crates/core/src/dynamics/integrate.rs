use num_traits::ToPrimitive;

use super::rhs::RhsModel;
use crate::error::{Error, Result};
use crate::hermcore::{eigvals_hermitian, HermMatrix, MarketState, Mat};
use crate::observables::{entropy_of_weights, excess_kurtosis, raw_moments};
use crate::scalar::{Elem, Real};
use crate::Tolerances;

/// Classical RK4 is stable for `dt·λ` down to about `-2.785` on the real axis.
const RK4_STEP_LIMIT: f64 = 2.5;
const EULER_STEP_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Euler,
    Rk4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig<T> {
    pub dt: T,
    pub steps: usize,
    pub method: Method,
    /// Checkpoint period in steps; `0` keeps only the first and last.
    pub checkpoint_every: usize,
    /// Divide by the trace after every step.
    pub renormalize_trace: bool,
    /// Sub-steps per step. `None` picks the fewest that keep `dt / substeps`
    /// inside the method's stability region.
    pub substeps: Option<usize>,
}

impl<T: Real> Default for IntegratorConfig<T> {
    fn default() -> Self {
        IntegratorConfig {
            dt: T::lit(1e-3),
            steps: 1000,
            method: Method::Rk4,
            checkpoint_every: 100,
            renormalize_trace: true,
            substeps: None,
        }
    }
}

impl<T: Real> IntegratorConfig<T> {
    /// Sub-steps used for `model`, checking the stability condition.
    pub fn resolve_substeps(&self, model: &RhsModel<T>) -> Result<usize> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        let (bound, limit) = match self.method {
            Method::Rk4 => (model.rate_bound(), RK4_STEP_LIMIT),
            Method::Euler => (model.euler_bound(), EULER_STEP_LIMIT),
        };
        let reach = (self.dt * bound).as_f64();
        match self.substeps {
            None => Ok((reach / limit).floor().to_usize().unwrap_or(usize::MAX - 1) + 1),
            Some(0) => Err(Error::InvalidArgument("substeps must be positive".into())),
            Some(s) => {
                let per = reach / s as f64;
                let ok = match self.method {
                    Method::Euler => per < EULER_STEP_LIMIT,
                    Method::Rk4 => per <= RK4_STEP_LIMIT,
                };
                if ok {
                    Ok(s)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "step dt/{s} with rate bound {} violates the {:?} stability condition",
                        bound, self.method
                    )))
                }
            }
        }
    }
}

/// Observables recorded at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint<T> {
    pub step: usize,
    pub t: T,
    pub mean: T,
    pub second_moment: T,
    pub variance: T,
    /// `NaN` when the second moment vanishes.
    pub excess_kurtosis: T,
    pub vn_entropy: T,
    /// Largest `|Tr ρ - 1|` seen before renormalisation since the previous
    /// checkpoint.
    pub trace_error: T,
    pub min_eig: T,
    pub max_offdiag: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub checkpoints: Vec<Checkpoint<T>>,
    /// Sub-steps per step actually used.
    pub substeps: usize,
}

impl<T> Trajectory<T> {
    pub fn last(&self) -> Option<&Checkpoint<T>> {
        self.checkpoints.last()
    }
}

/// Fixed-step integration of `dρ/dt = D(ρ)`.
///
/// Real initial states are integrated in real arithmetic; the result is
/// bitwise identical to the complex path since the generator has real
/// weights.
pub fn evolve<T: Real>(
    rho0: &MarketState<T>,
    model: &RhsModel<T>,
    cfg: &IntegratorConfig<T>,
) -> Result<(MarketState<T>, Trajectory<T>)> {
    if rho0.dim() != model.dim() {
        return Err(Error::DimMismatch {
            expected: model.dim(),
            got: rho0.dim(),
        });
    }
    let substeps = cfg.resolve_substeps(model)?;
    let x = rho0.grid().values();
    let m = rho0.matrix();
    let (fin, checkpoints) = if m.is_real() {
        let (r, c) = Engine::new(model, cfg, substeps, x).run(m.re_part())?;
        (r.to_complex(), c)
    } else {
        Engine::new(model, cfg, substeps, x).run(m.clone())?
    };

    // The last checkpoint has already checked trace, Hermiticity and the
    // smallest eigenvalue of this exact matrix.
    let state = MarketState::new_unchecked(fin, rho0.grid().clone());
    Ok((
        state,
        Trajectory {
            checkpoints,
            substeps,
        },
    ))
}

fn numerical(step: usize, reason: String) -> Error {
    Error::NumericalFailure { step, reason }
}

struct Engine<'a, T: Real> {
    model: &'a RhsModel<T>,
    cfg: &'a IntegratorConfig<T>,
    substeps: usize,
    x: &'a [T],
    tol: Tolerances,
}

impl<'a, T: Real> Engine<'a, T> {
    fn new(
        model: &'a RhsModel<T>,
        cfg: &'a IntegratorConfig<T>,
        substeps: usize,
        x: &'a [T],
    ) -> Self {
        Engine {
            model,
            cfg,
            substeps,
            x,
            tol: T::tolerances(),
        }
    }

    fn is_checkpoint(&self, step: usize) -> bool {
        step == 0
            || step == self.cfg.steps
            || (self.cfg.checkpoint_every > 0 && step.is_multiple_of(self.cfg.checkpoint_every))
    }

    fn run<E: Elem<Real = T>>(&self, mut rho: Mat<E>) -> Result<(Mat<E>, Vec<Checkpoint<T>>)> {
        let n = rho.dim();
        let h = self.cfg.dt / T::from_usize_lossy(self.substeps);
        let mut ws = Workspace::new(n);
        let mut out = Vec::new();
        let first_err = (trace_re(&rho) - T::one()).abs();
        out.push(self.checkpoint(&rho, 0, first_err)?);
        let mut drift = T::zero();
        let run_trace = T::lit(self.tol.run_trace);

        for step in 1..=self.cfg.steps {
            for _ in 0..self.substeps {
                match self.cfg.method {
                    Method::Euler => self.euler(&mut rho, h, &mut ws)?,
                    Method::Rk4 => self.rk4(&mut rho, h, &mut ws)?,
                }
            }
            let tr = trace_re(&rho);
            let err = (tr - T::one()).abs();
            if !(err <= run_trace) {
                return Err(numerical(step, format!("trace drift {err}")));
            }
            drift = drift.max(err);
            // One sweep both rescales and screens for non-finite entries.
            let inv = if self.cfg.renormalize_trace {
                T::one() / tr
            } else {
                T::one()
            };
            let mut finite = true;
            for v in rho.as_mut_slice() {
                *v = v.scale(inv);
                finite &= v.all_finite();
            }
            if !finite {
                return Err(numerical(step, "non-finite entries".into()));
            }
            if self.is_checkpoint(step) {
                out.push(self.checkpoint(&rho, step, drift)?);
                drift = T::zero();
            }
        }
        Ok((rho, out))
    }

    fn euler<E: Elem<Real = T>>(
        &self,
        rho: &mut Mat<E>,
        h: T,
        ws: &mut Workspace<E>,
    ) -> Result<()> {
        self.model.apply_affine(rho, rho, h, &mut ws.a)?;
        std::mem::swap(rho, &mut ws.a);
        Ok(())
    }

    /// Classical RK4. For a linear autonomous generator one step equals
    /// `Σ_{k≤4} (hD)^k / k!`, evaluated here in nested form
    /// `ρ + hD(ρ + h/2 D(ρ + h/3 D(ρ + h/4 Dρ)))`: four fused passes and no
    /// separate accumulation sweeps.
    fn rk4<E: Elem<Real = T>>(&self, rho: &mut Mat<E>, h: T, ws: &mut Workspace<E>) -> Result<()> {
        let m = self.model;
        m.apply_affine(rho, rho, h / T::lit(4.0), &mut ws.a)?;
        m.apply_affine(&ws.a, rho, h / T::lit(3.0), &mut ws.b)?;
        m.apply_affine(&ws.b, rho, h / T::lit(2.0), &mut ws.a)?;
        m.apply_affine(&ws.a, rho, h, &mut ws.b)?;
        std::mem::swap(rho, &mut ws.b);
        Ok(())
    }

    fn checkpoint<E: Elem<Real = T>>(
        &self,
        rho: &Mat<E>,
        step: usize,
        trace_error: T,
    ) -> Result<Checkpoint<T>> {
        let p: Vec<T> = rho.diag().iter().map(|v| v.re()).collect();
        let (mean, m2, m4) = raw_moments(&p, self.x)?;
        let values = if rho.is_diagonal() {
            let mut v = p.clone();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
            v
        } else {
            eigvals_hermitian(rho)
                .map_err(|e| numerical(step, e.to_string()))?
                .values()
                .to_vec()
        };
        let min_eig = values.first().copied().unwrap_or(T::zero());
        if min_eig < -T::lit(self.tol.run_min_eig) {
            return Err(numerical(step, format!("negative eigenvalue {min_eig}")));
        }
        let residual = rho.hermitian_residual();
        if residual > T::lit(self.tol.hermitian) {
            return Err(numerical(step, format!("Hermitian residual {residual}")));
        }
        Ok(Checkpoint {
            step,
            t: self.cfg.dt * T::from_usize_lossy(step),
            mean,
            second_moment: m2,
            variance: m2 - mean * mean,
            excess_kurtosis: excess_kurtosis(m2, m4).unwrap_or(T::nan()),
            vn_entropy: entropy_of_weights(&values, T::lit(self.tol.eig_clamp)),
            trace_error,
            min_eig,
            max_offdiag: rho.max_offdiag(),
        })
    }
}

struct Workspace<E> {
    a: Mat<E>,
    b: Mat<E>,
}

impl<E: Elem> Workspace<E> {
    fn new(n: usize) -> Self {
        Workspace {
            a: Mat::zeros(n),
            b: Mat::zeros(n),
        }
    }
}

fn trace_re<E: Elem>(m: &Mat<E>) -> E::Real {
    m.trace().re()
}

/// One explicit step of `D` applied to a complex matrix; used by the
/// finite-difference checks.
pub fn euler_increment<T: Real>(
    model: &RhsModel<T>,
    rho: &HermMatrix<T>,
    dt: T,
) -> Result<HermMatrix<T>> {
    let mut k = Mat::zeros(rho.dim());
    model.apply(rho, &mut k)?;
    rho.add_scaled(&k, dt)
}
