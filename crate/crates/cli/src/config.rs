//! JSON run configuration.
//!
//! Unknown keys are rejected. Omitted optional keys take the defaults of
//! the reference simulation: 1001 points on `[-1/2, 1/2]`, width 0.005,
//! `θ = 1`, `dt = 1e-3`, 1000 RK4 steps, a checkpoint every 100 steps.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex;
use oqs_market::dynamics::{IntegratorConfig, Method};
use oqs_market::hermcore::HermMatrix;
use oqs_market::operators::{
    coefficients_from_env, DissipatorSpec, EnvironmentState, LadderKernel, PriceGrid,
};
use oqs_market::scenarios::{InitialStateSpec, ScenarioConfig};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gaussian,
    Ng1,
    Ng2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    Euler,
    Rk4,
}

impl From<MethodKind> for Method {
    fn from(m: MethodKind) -> Self {
        match m {
            MethodKind::Euler => Method::Euler,
            MethodKind::Rk4 => Method::Rk4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBounds {
    pub lo: f64,
    pub hi: f64,
}

/// Environment of `k` levels. Without `r` the environment is maximally
/// mixed; otherwise `r` lists the rows of the density matrix as
/// `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    pub k: usize,
    #[serde(default = "one")]
    pub kappa: f64,
    #[serde(default)]
    pub r: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub grid: Option<GridBounds>,
    #[serde(default)]
    pub sigma2: Option<f64>,
    #[serde(default)]
    pub environment: Option<EnvironmentConfig>,
    #[serde(default)]
    pub nu_u2: Option<f64>,
    #[serde(default)]
    pub nu_d2: Option<f64>,
    /// Kernel taps from `h_{-w}` to `h_w`.
    #[serde(default)]
    pub kernel: Option<Vec<f64>>,
    #[serde(default = "one")]
    pub theta: f64,
    #[serde(default = "default_width")]
    pub width: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_method")]
    pub method: MethodKind,
    #[serde(default = "default_checkpoint_every")]
    pub checkpoint_every: usize,
    #[serde(default)]
    pub substeps: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn one() -> f64 {
    1.0
}
fn default_n() -> usize {
    1001
}
fn default_width() -> f64 {
    0.005
}
fn default_dt() -> f64 {
    1e-3
}
fn default_steps() -> usize {
    1000
}
fn default_method() -> MethodKind {
    MethodKind::Rk4
}
fn default_checkpoint_every() -> usize {
    100
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Weights of the generator before any model-specific checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub sigma2: f64,
    pub nu_u2: f64,
    pub nu_d2: f64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks that do not depend on which subcommand runs.
    fn check(&self) -> CliResult<()> {
        match (&self.sigma2, &self.environment) {
            (Some(_), Some(_)) => {
                return Err(config_err("give either sigma2 or environment, not both"))
            }
            (None, None) => return Err(config_err("one of sigma2 or environment is required")),
            _ => {}
        }
        if self.environment.is_some() && (self.nu_u2.is_some() || self.nu_d2.is_some()) {
            return Err(config_err(
                "nu_u2 and nu_d2 are derived from the environment; do not set them",
            ));
        }
        if self.model != ModelKind::Ng1 && (self.nu_u2.is_some() || self.nu_d2.is_some()) {
            return Err(config_err("nu_u2 and nu_d2 apply only to model ng1"));
        }
        if self.model != ModelKind::Ng2 && self.kernel.is_some() {
            return Err(config_err("kernel applies only to model ng2"));
        }
        self.grid()?;
        self.weights()?;
        Ok(())
    }

    pub fn grid(&self) -> CliResult<Arc<PriceGrid<f64>>> {
        let b = self.grid.unwrap_or(GridBounds { lo: -0.5, hi: 0.5 });
        Ok(Arc::new(PriceGrid::from_bounds(b.lo, b.hi, self.n)?))
    }

    fn environment_state(env: &EnvironmentConfig) -> CliResult<EnvironmentState<f64>> {
        match &env.r {
            None => Ok(EnvironmentState::maximally_mixed(env.k, env.kappa)?),
            Some(rows) => {
                if rows.len() != env.k || rows.iter().any(|r| r.len() != env.k) {
                    return Err(config_err(format!("environment r must be {0}x{0}", env.k)));
                }
                let m = HermMatrix::from_fn(env.k, |i, j| {
                    let [re, im] = rows[i][j];
                    Complex::new(re, im)
                });
                Ok(EnvironmentState::new(m, env.kappa)?)
            }
        }
    }

    pub fn weights(&self) -> CliResult<Weights> {
        if let Some(env) = &self.environment {
            let co = coefficients_from_env(&Self::environment_state(env)?)?;
            return Ok(Weights {
                sigma2: co.sigma2,
                nu_u2: co.nu_u2,
                nu_d2: co.nu_d2,
            });
        }
        let sigma2 = self.sigma2.expect("checked: sigma2 or environment");
        Ok(Weights {
            sigma2,
            nu_u2: self.nu_u2.unwrap_or(0.0),
            nu_d2: self.nu_d2.unwrap_or(0.0),
        })
    }

    /// Environment dimension, or the reference value 11 when the weights are
    /// given directly.
    pub fn env_dim(&self) -> usize {
        self.environment.as_ref().map_or(11, |e| e.k)
    }

    /// The generator described by the configuration.
    pub fn dissipator(&self) -> CliResult<DissipatorSpec<f64>> {
        let w = self.weights()?;
        match self.model {
            ModelKind::Gaussian => Ok(DissipatorSpec::gaussian(w.sigma2)?),
            ModelKind::Ng1 => {
                if self.environment.is_none() && (self.nu_u2.is_none() || self.nu_d2.is_none()) {
                    return Err(config_err("model ng1 needs nu_u2 and nu_d2"));
                }
                Ok(DissipatorSpec::coherent(w.sigma2, w.nu_u2, w.nu_d2)?)
            }
            ModelKind::Ng2 => {
                let taps = self
                    .kernel
                    .clone()
                    .ok_or_else(|| config_err("model ng2 needs kernel taps"))?;
                Ok(DissipatorSpec::non_local(
                    w.sigma2,
                    LadderKernel::new(taps)?,
                )?)
            }
        }
    }

    pub fn integrator(&self) -> IntegratorConfig<f64> {
        IntegratorConfig {
            dt: self.dt,
            steps: self.steps,
            method: self.method.into(),
            checkpoint_every: self.checkpoint_every,
            renormalize_trace: true,
            substeps: self.substeps,
        }
    }

    pub fn initial(&self) -> CliResult<InitialStateSpec<f64>> {
        Ok(InitialStateSpec {
            n: self.n,
            width: self.width,
            theta: self.theta,
            grid: Some(self.grid()?),
        })
    }

    pub fn scenario(&self) -> CliResult<ScenarioConfig<f64>> {
        Ok(ScenarioConfig {
            initial: self.initial()?,
            integrator: self.integrator(),
            sigma2: self.weights()?.sigma2,
            env_dim: self.env_dim(),
            keep_distribution: false,
        })
    }
}
