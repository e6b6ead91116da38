use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tdho_cli::commands::{self, FigureId};
use tdho_cli::config::RunConfig;
use tdho_cli::error::CliError;
use tdho_cli::validation::{self, Level};

/// Time-dependent harmonic oscillator toolkit: auxiliary amplitudes,
/// squeezing, variances, transition probabilities, and wave functions,
/// with a built-in validation suite.
#[derive(Parser)]
#[command(name = "tdho", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SeriesArgs {
    /// Run configuration (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the auxiliary amplitude ρ(t) and its derivative
    Rho(SeriesArgs),
    /// Tabulate the squeezing parameters r, φ, λ
    Squeeze(SeriesArgs),
    /// Tabulate position and momentum variances
    Variances(SeriesArgs),
    /// Tabulate persistence, excitation, and individual transition probabilities
    Probabilities(SeriesArgs),
    /// Tabulate a full wave function over the spatial grid at one time
    Wavefunction(SeriesArgs),
    /// Regenerate the published figure data sets
    Figures {
        /// Single figure to produce (default: all)
        #[arg(long, value_enum)]
        which: Option<FigureId>,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the validation suite and write a JSON report
    Validate {
        /// Suite depth: fast skips the grid-propagator cross-check
        #[arg(long, value_enum, default_value = "full")]
        level: Level,
        /// Output directory for validation_report.json
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Rho(args) => series(&args, commands::cmd_rho),
        Command::Squeeze(args) => series(&args, commands::cmd_squeeze),
        Command::Variances(args) => series(&args, commands::cmd_variances),
        Command::Probabilities(args) => series(&args, commands::cmd_probabilities),
        Command::Wavefunction(args) => series(&args, commands::cmd_wavefunction),
        Command::Figures { which, out } => {
            std::fs::create_dir_all(&out)?;
            for path in commands::cmd_figures(which, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { level, out } => validate(level, &out),
    }
}

fn series(
    args: &SeriesArgs,
    cmd: fn(&RunConfig, &std::path::Path) -> Result<PathBuf, CliError>,
) -> Result<ExitCode, CliError> {
    let cfg = RunConfig::load(&args.config)?;
    std::fs::create_dir_all(&args.out)?;
    let path = cmd(&cfg, &args.out)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn validate(level: Level, out: &std::path::Path) -> Result<ExitCode, CliError> {
    let report = validation::run_all(level);
    for check in &report.checks {
        println!("{}", check.line());
    }
    println!(
        "{}: {} passed, {} failed, {} skipped",
        if report.ok { "OK" } else { "FAILED" },
        report.passed,
        report.failed,
        report.skipped
    );
    std::fs::create_dir_all(out)?;
    let path = out.join("validation_report.json");
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Config(format!("cannot serialize report: {e}")))?;
    std::fs::write(&path, json)?;
    println!("wrote {}", path.display());
    Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
