use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use oqs_market::dynamics::{evolve, RhsModel, Trajectory};
use oqs_market::hermcore::{HermMatrix, MarketState};
use oqs_market::operators::{DissipatorSpec, LadderKernel, PriceGrid};
use oqs_market::oracle::{
    dense_dissipator_reference, random_density, random_density_supported, variance_rate_check,
    RATE_SUPPORT_MARGIN,
};
use oqs_market::scenarios::{
    build_initial_state, run_rows, run_sim1, run_sim2, run_sim3, SweepRow,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ModelKind, RunConfig};
use crate::csv;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    /// Initial classical weight; any model.
    Theta,
    /// `ν_u² = ν_d²`; model ng1.
    Nu,
    /// Jump weight of the kernel `(√h, √(1-2h), √h)`; model ng2.
    H,
}

/// Sends output to `path`, or to stdout when there is none.
fn with_output<F>(path: Option<&Path>, f: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn evolve_config(cfg: &RunConfig) -> CliResult<(MarketState<f64>, Trajectory<f64>)> {
    let spec = cfg.dissipator()?;
    let rho0 = build_initial_state(&cfg.initial()?)?;
    let model = RhsModel::new(spec, rho0.dim())?;
    Ok(evolve(&rho0, &model, &cfg.integrator())?)
}

pub fn run(cfg: &RunConfig, output: Option<&Path>) -> CliResult<()> {
    let (_, tr) = evolve_config(cfg)?;
    with_output(output, |w| csv::write_trajectory(w, &tr))
}

pub fn dump_distribution(cfg: &RunConfig, output: Option<&Path>) -> CliResult<()> {
    let (fin, _) = evolve_config(cfg)?;
    let p = fin.probabilities();
    with_output(output, |w| {
        csv::write_distribution(w, fin.grid().values(), &p)
    })
}

pub fn sweep_rows(
    cfg: &RunConfig,
    param: SweepParam,
    values: &[f64],
) -> CliResult<Vec<SweepRow<f64>>> {
    let scenario = cfg.scenario()?;
    let rows = match (param, cfg.model) {
        (SweepParam::Theta, ModelKind::Gaussian) => run_sim1(values, &scenario)?.rows,
        (SweepParam::Theta, _) => {
            let spec = cfg.dissipator()?;
            run_rows(values, &scenario, |theta| Ok((spec.clone(), theta)))?
        }
        (SweepParam::Nu, ModelKind::Ng1) => run_sim2(values, cfg.theta, &scenario)?.rows,
        (SweepParam::H, ModelKind::Ng2) => run_sim3(values, cfg.theta, &scenario)?.rows,
        (SweepParam::Nu, _) => return Err(CliError::Config("a nu sweep needs model ng1".into())),
        (SweepParam::H, _) => return Err(CliError::Config("an h sweep needs model ng2".into())),
    };
    Ok(rows)
}

pub fn sweep(
    cfg: &RunConfig,
    param: SweepParam,
    values: &[f64],
    output: Option<&Path>,
) -> CliResult<()> {
    if values.is_empty() {
        return Err(CliError::Config("no sweep values given".into()));
    }
    let rows = sweep_rows(cfg, param, values)?;
    with_output(output, |w| csv::write_sweep(w, &rows))
}

/// Outcome of one self-check item.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.worst < self.tolerance
    }
}

/// One generator per model; `ν² = 0.35 σ²`, `h = 0.15`.
fn check_specs(n: usize, sigma2: f64) -> CliResult<Vec<(&'static str, DissipatorSpec<f64>)>> {
    let kernel = LadderKernel::from_jump_weight(0.15)?;
    let nu2 = 0.35 * sigma2;
    let mut specs = vec![
        ("gaussian", DissipatorSpec::gaussian(sigma2)?),
        ("ng1", DissipatorSpec::coherent(sigma2, nu2, nu2)?),
    ];
    // A three-tap kernel needs a grid of at least three points.
    if n >= 3 {
        specs.push(("ng2", DissipatorSpec::non_local(sigma2, kernel)?));
    }
    Ok(specs)
}

/// Fast path against the dense reference on random states, and the
/// closed-form variance rates against finite differences.
pub fn self_check(seed: u64, trials: usize) -> CliResult<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    for n in [4usize, 8, 32, 64] {
        for (name, spec) in check_specs(n, 2.0)? {
            let model = RhsModel::new(spec.clone(), n)?;
            let mut worst = 0.0f64;
            for _ in 0..trials {
                let rho = random_density::<f64, _>(n, &mut rng);
                let reference = dense_dissipator_reference(&rho, &spec)?;
                let mut fast = HermMatrix::zeros(n);
                model.apply(&rho, &mut fast)?;
                worst = worst.max(fast.max_abs_diff(&reference));
            }
            lines.push(CheckLine {
                name: format!("rhs vs reference, {name}, n={n}"),
                worst,
                tolerance: 1e-12,
            });
        }
    }
    // The rate checks use the reference grid spacing and volatility.
    let n = 64;
    let grid = Arc::new(PriceGrid::centered(n, 1e-3)?);
    for (name, spec) in check_specs(n, 400.0)? {
        let mut worst = 0.0f64;
        for _ in 0..trials.min(20) {
            let m = RATE_SUPPORT_MARGIN;
            let rho = random_density_supported(n, m..n - m, &mut rng)?;
            let state = MarketState::new(rho, grid.clone())?;
            worst = worst.max(variance_rate_check(&state, &spec)?.rel_diff());
        }
        lines.push(CheckLine {
            name: format!("variance rate, {name}, n={n}"),
            worst,
            tolerance: 1e-6,
        });
    }
    Ok(lines)
}

pub fn resolve_output(flag: Option<PathBuf>, cfg: &RunConfig) -> Option<PathBuf> {
    flag.or_else(|| cfg.output.clone())
}
