mod commands;
mod error;
mod portfolio_file;
mod render;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lowpd::{McConfig, NumericConfig, QuadratureSpec};

use commands::{
    BoundArgs, DensityArgs, DensityKind, Format, McCheckArgs, PortfolioArgs, TableChoice,
};
use error::{CliError, CliResult};

/// Upper confidence bounds for default probabilities in low-default portfolios.
#[derive(Parser)]
#[command(name = "lowpd", version)]
struct Cli {
    #[command(flatten)]
    numeric: NumericArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NumericArgs {
    /// Gauss-Legendre nodes per quadrature panel.
    #[arg(long, global = true, default_value_t = QuadratureSpec::default().node_count)]
    nodes: usize,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = QuadratureSpec::default().abs_tol)]
    tol: f64,
}

impl NumericArgs {
    fn config(&self) -> NumericConfig {
        let mut cfg = NumericConfig::default();
        cfg.quadrature.node_count = self.nodes;
        cfg.quadrature.abs_tol = self.tol;
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Upper PD bound for one grade of n obligors with k defaults.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Confidence level(s); repeat the flag or separate with commas.
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        /// Asset correlation; omit for independent obligors.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Bounds for every grade of a portfolio file (grade,obligors,defaults).
    Portfolio {
        /// Portfolio file, grades ordered from lowest to highest risk.
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<f64>,
        #[arg(long)]
        rho: Option<f64>,
        /// Raise defaults of reversed grades until bounds are monotone.
        #[arg(long)]
        remediate: bool,
        /// Print an example portfolio file and exit.
        #[arg(long)]
        emit_template: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Quantile of the distribution F_{a,b,rho}.
    Quantile {
        #[arg(long)]
        prob: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        rho: f64,
    },
    /// Density or CDF values on a grid, as CSV.
    Density {
        #[arg(value_enum)]
        kind: DensityKind,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        rho: f64,
        /// Unconditional PD, for the vasicek kind.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        /// Emit the CDF instead of the density.
        #[arg(long)]
        cdf: bool,
    },
    /// Regenerate the reference tables.
    Tables {
        /// Table number or `all`.
        #[arg(default_value = "all")]
        which: TableChoice,
        /// Compare with the embedded published values.
        #[arg(long)]
        diff: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compare P(D <= k) by quadrature and by simulation.
    McCheck {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = McConfig::default().trials)]
        trials: u64,
        #[arg(long, default_value_t = McConfig::default().seed)]
        seed: u64,
    },
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    let cfg = cli.numeric.config();
    let q = cfg.integrator()?;
    match cli.command {
        Command::Bound { n, k, gamma, rho, format } => {
            commands::bound(&BoundArgs { n, k, gammas: gamma, rho, format }, &q, out)
        }
        Command::Portfolio { file, gamma, rho, remediate, emit_template, format } => {
            let args = PortfolioArgs { file, gammas: gamma, rho, remediate, emit_template, format };
            commands::portfolio(&args, &cfg, out)
        }
        Command::Quantile { prob, a, b, rho } => commands::quantile(prob, a, b, rho, &q, out),
        Command::Density { kind, a, b, rho, p, from, to, step, cdf } => {
            let args = DensityArgs { kind, a, b, rho, p, from, to, step, cdf };
            commands::density(&args, &q, out)
        }
        Command::Tables { which, diff, format } => commands::tables_cmd(which, diff, format, &cfg, out),
        Command::McCheck { n, k, p, rho, trials, seed } => {
            let args = McCheckArgs { n, k, p, rho, mc: McConfig::new(trials, seed) };
            commands::mc_check(&args, &q, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("lowpd: {e}");
            e.exit_code()
        }
    }
}
