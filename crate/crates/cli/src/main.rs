use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oqs_market_cli::commands::{self, SweepParam};
use oqs_market_cli::config::MethodKind;
use oqs_market_cli::{CliError, CliResult, RunConfig};

#[derive(Parser)]
#[command(name = "oqs-market", version, about = "Open-system market simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,

    /// Output file; stdout when omitted and the config names none
    #[arg(long)]
    output: Option<PathBuf>,

    /// Override the checkpoint period (0 keeps only first and last)
    #[arg(long)]
    checkpoint_every: Option<usize>,

    /// Override the integration method
    #[arg(long, value_enum)]
    method: Option<MethodKind>,
}

impl Common {
    fn load(&self) -> CliResult<(RunConfig, Option<PathBuf>)> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(k) = self.checkpoint_every {
            cfg.checkpoint_every = k;
        }
        if let Some(m) = self.method {
            cfg.method = m;
        }
        let out = commands::resolve_output(self.output.clone(), &cfg);
        Ok((cfg, out))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one configuration and write its checkpoints
    Run(Common),
    /// Run one configuration per value of a parameter
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        param: SweepParam,
        /// Comma-separated values
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Evolve and write the final price distribution
    DumpDistribution(Common),
    /// Compare the fast generator with the dense reference
    SelfCheck {
        /// Takes precedence over the config seed; 7 when neither is given
        #[arg(long)]
        seed: Option<u64>,
        /// JSON run configuration; only its seed is read
        #[arg(long)]
        config: Option<PathBuf>,
        /// Random states per model and dimension
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run(c) => {
            let (cfg, out) = c.load()?;
            commands::run(&cfg, out.as_deref())
        }
        Command::Sweep {
            common,
            param,
            values,
        } => {
            let (cfg, out) = common.load()?;
            commands::sweep(&cfg, param, &values, out.as_deref())
        }
        Command::DumpDistribution(c) => {
            let (cfg, out) = c.load()?;
            commands::dump_distribution(&cfg, out.as_deref())
        }
        Command::SelfCheck {
            seed,
            config,
            trials,
        } => {
            let from_config = match config {
                Some(path) => RunConfig::load(&path)?.seed,
                None => None,
            };
            let seed = seed.or(from_config).unwrap_or(7);
            let lines = commands::self_check(seed, trials)?;
            let mut failed = 0;
            for l in &lines {
                let tag = if l.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{tag} {}: worst {:.3e} (tol {:.0e})",
                    l.name, l.worst, l.tolerance
                );
                failed += usize::from(!l.passed());
            }
            if failed > 0 {
                return Err(CliError::Numerical(format!(
                    "{failed} self-check item(s) failed"
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oqs-market: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
