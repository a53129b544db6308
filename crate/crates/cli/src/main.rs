//! `g2abs`: visibilities, G² curves, sweeps and Monte Carlo validation for
//! two independent light beams at an asymmetrical beam splitter.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

mod commands;
mod format;
mod grid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use g2abs::PairKind;

#[derive(Parser, Debug)]
#[command(name = "g2abs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the closed-form visibility for one configuration.
    Visibility(VisibilityArgs),
    /// Write visibilities over an (x, R) grid as CSV.
    Sweep(SweepArgs),
    /// Write a G²(τ) curve as CSV, analytic or Monte Carlo.
    G2(G2Args),
    /// Compare Monte Carlo and closed-form visibilities over a grid.
    Validate(ValidateArgs),
    /// Reproduce the table of maximal visibilities.
    Table1(Table1Args),
}

#[derive(Args, Debug)]
struct VisibilityArgs {
    #[arg(long, value_parser = parse_pair)]
    pair: PairKind,
    /// Intensity ratio I_a / I_b.
    #[arg(long)]
    x: f64,
    /// Beam-splitter reflectivity.
    #[arg(long)]
    r: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_parser = parse_pair, required_unless_present = "preset")]
    pair: Option<PairKind>,
    /// Ratio values: `v`, `a,b,c`, `start:stop:count` or `log:start:stop:count`.
    #[arg(long, required_unless_present = "preset")]
    x: Option<String>,
    /// Reflectivity values, same forms as --x. R = 0 and 1 give visibility 0.
    #[arg(long, required_unless_present = "preset")]
    r: Option<String>,
    /// Named grid reproducing one of the published figures.
    #[arg(long, value_enum, conflicts_with_all = ["pair", "x", "r"])]
    preset: Option<commands::Preset>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Analytic,
    Mc,
}

#[derive(Args, Debug)]
struct G2Args {
    #[arg(long, value_parser = parse_pair)]
    pair: PairKind,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    r: f64,
    /// Beat frequency |ν_a − ν_b| in Hz.
    #[arg(long = "delta-nu")]
    delta_nu: f64,
    /// τ grid in seconds; defaults to 81 points over ±1/Δν.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Analytic)]
    mode: Mode,
    /// Monte Carlo realizations.
    #[arg(long, default_value_t = 100_000)]
    n: u64,
    #[arg(long, env = "ABS_SEED", default_value_t = 1)]
    seed: u64,
    /// Read the visibility off raw curve extrema instead of the sinusoid fit.
    #[arg(long)]
    raw_extrema: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the fitted visibility as JSON (mc mode).
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Comma-separated pairings; all six when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pair: Vec<PairKind>,
    #[arg(long, default_value = "0.5,1,2")]
    x: String,
    #[arg(long, default_value = "0.25,0.5,0.75")]
    r: String,
    #[arg(long = "delta-nu", default_value_t = 1e6)]
    delta_nu: f64,
    #[arg(long, default_value_t = 100_000)]
    n: u64,
    #[arg(long, env = "ABS_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct Table1Args {
    #[arg(long)]
    json: bool,
}

fn parse_pair(s: &str) -> Result<PairKind, String> {
    s.parse::<PairKind>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Visibility(a) => commands::visibility(a.pair, a.x, a.r, a.json),
        Command::Sweep(a) => commands::sweep(a),
        Command::G2(a) => commands::g2(a),
        Command::Validate(a) => commands::validate(a),
        Command::Table1(a) => commands::table1(a.json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
