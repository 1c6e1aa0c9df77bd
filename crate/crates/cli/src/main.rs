//! Command-line front end for the hypersphere volume engines.
//!
//! Exit codes: 0 success, 1 failed cross-validation, 2 invalid
//! arguments, 3 engine failure.

mod commands;
mod record;

use clap::{Parser, Subcommand};

use commands::{CheckArgs, McArgs, ParadoxArgs, PdfArgs, TableArgs, VolumeArgs};

#[derive(Parser)]
#[command(
    name = "convsphere",
    version,
    about = "Hypersphere volumes by exact recurrence, grid convolution, and Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of the radius-r ball in n dimensions
    Volume(VolumeArgs),
    /// Unit-ball coefficients for dimensions 2 through n-max
    Table(TableArgs),
    /// Density monomial of a sum of squared uniform coordinates
    Pdf(PdfArgs),
    /// Cross-validate the exact, grid, and Monte Carlo engines
    Check(CheckArgs),
    /// Monte Carlo estimates of ball and coverage probabilities
    Mc(McArgs),
    /// Corner-sphere construction report for high dimensions
    Paradox(ParadoxArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Volume(a) => commands::cmd_volume(a),
        Command::Table(a) => commands::cmd_table(a),
        Command::Pdf(a) => commands::cmd_pdf(a),
        Command::Check(a) => commands::cmd_check(a),
        Command::Mc(a) => commands::cmd_mc(a),
        Command::Paradox(a) => commands::cmd_paradox(a),
    };
    if let Err(e) = outcome {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}
