//! `gme-kit` — detect genuine multipartite entanglement in tripartite
//! qudit states from correlation-tensor trace norms.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gme_kit::analysis::NoiseDirection;
use gme_kit::basis::Convention;
use gme_kit::criteria::CriterionId;

use crate::io::CliError;

#[derive(Parser)]
#[command(
    name = "gme-kit",
    version,
    about = "GME detection for tripartite qudit states via correlation-tensor trace norms",
    after_help = "States are JSON files or builtins (builtin:ghz, builtin:w, builtin:gghz, \
                  builtin:gghz:<d>). Set GME_KIT_THREADS to cap internal parallelism. \
                  Exit codes: 0 ran, 2 input error, 3 numerical-integrity error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Thm1,
    Thm2,
    Ref29,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    /// x is the noise weight (v = 1 - x).
    Noise,
    /// x is the visibility itself (v = x).
    Visibility,
}

impl From<DirectionArg> for NoiseDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Noise => NoiseDirection::XIsNoise,
            DirectionArg::Visibility => NoiseDirection::XIsVisibility,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// tr(λmλn) = 2δmn.
    Standard,
    /// (d/2) x standard, the scaling the criteria are stated in.
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanModeArg {
    /// Max tensor norm over seeded biseparable samples vs the threshold.
    Bisep,
    /// Max tensor-norm deviation under Haar local-unitary triples.
    Lu,
}

#[derive(Clone, Copy, ValueEnum)]
enum TensorKindArg {
    /// The (d²-1) x (d²-1)² three-body unfolding.
    Full,
    /// The 4 x 16 unfolding over the distinguished generators (d >= 3).
    Restricted,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate GME criteria on a state and report verdicts.
    Check {
        /// State file path or builtin:<name>.
        state: String,
        #[arg(long, value_enum, default_value = "all")]
        criterion: CriterionArg,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the white-noise parameter and write one CSV row per point.
    Sweep {
        state: String,
        /// Grid as start:stop:steps, e.g. 0:1:101.
        #[arg(long, default_value = "0:1:101")]
        grid: String,
        #[arg(long, value_enum, default_value = "noise")]
        direction: DirectionArg,
        /// Add the published comparison columns when the state matches a
        /// worked example.
        #[arg(long)]
        with_literature: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate the worked-example datasets (sweeps, critical points,
    /// comparison tables).
    Reproduce {
        /// 1, 2, 3, or fig1.
        #[arg(long)]
        example: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification scan and write a pass/fail report.
    Scan {
        #[arg(long, value_enum)]
        mode: ScanModeArg,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// State for lu mode (defaults to builtin:ghz / builtin:gghz:<d>).
        #[arg(long)]
        state: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the generator matrices of the operator basis as JSON.
    Basis {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value = "paper")]
        convention: ConventionArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a correlation tensor as (row, column pair, value) CSV.
    Tensor {
        state: String,
        #[arg(long, value_enum, default_value = "full")]
        kind: TensorKindArg,
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("GME_KIT_THREADS") {
        let n: usize = raw
            .parse()
            .map_err(|_| CliError::input(format!("GME_KIT_THREADS = '{raw}' is not a number")))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::input(format!("cannot configure thread pool: {e}")))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Check {
            state,
            criterion,
            out,
        } => {
            let (criteria, all): (Vec<CriterionId>, bool) = match criterion {
                CriterionArg::Thm1 => (vec![CriterionId::Thm1], false),
                CriterionArg::Thm2 => (vec![CriterionId::Thm2], false),
                CriterionArg::Ref29 => (vec![CriterionId::Ref29Bipartite], false),
                CriterionArg::All => (vec![], true),
            };
            commands::cmd_check(&state, &criteria, all, out.as_deref())
        }
        Command::Sweep {
            state,
            grid,
            direction,
            with_literature,
            out,
        } => commands::cmd_sweep(&state, &grid, direction.into(), with_literature, &out),
        Command::Reproduce { example, out } => commands::cmd_reproduce(&example, &out),
        Command::Scan {
            mode,
            d,
            samples,
            seed,
            state,
            out,
        } => {
            let mode = match mode {
                ScanModeArg::Bisep => "bisep",
                ScanModeArg::Lu => "lu",
            };
            commands::cmd_scan(mode, d, samples, seed, state.as_deref(), out.as_deref())
        }
        Command::Basis { d, convention, out } => {
            let convention = match convention {
                ConventionArg::Standard => Convention::Standard,
                ConventionArg::Paper => Convention::PaperScaled,
            };
            commands::cmd_basis(d, convention, out.as_deref())
        }
        Command::Tensor { state, kind, out } => {
            let restricted = matches!(kind, TensorKindArg::Restricted);
            commands::cmd_tensor(&state, restricted, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code as u8)
        }
    }
}
