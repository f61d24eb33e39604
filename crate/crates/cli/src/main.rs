//! `kiv-zeros`: zeros in the order of `K_{i nu}(x)` from the command line.
//!
//! Exit status is 0 on success, 1 when a computation fails (no bracket,
//! accuracy not reached, a table row off), 2 on bad arguments.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

/// Environment variable overriding the default quadrature precision.
pub const DIGITS_ENV: &str = "KIV_ZEROS_DIGITS";

#[derive(Parser, Debug)]
#[command(name = "kiv-zeros", version, about = "Real zeros in the order of the Macdonald function K_{i nu}(x)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate f(nu) = e^{pi nu/2} K_{i nu}(x) at a point or over a nu sweep.
    Eval(commands::EvalArgs),
    /// Asymptotic estimates of the zeros nu_n, optionally refined.
    Zeros(commands::ZerosArgs),
    /// Reproduce the reference table of zeros at x = 1 and check it digit by digit.
    Table1(commands::Table1Args),
    /// Dump the exactly derived coefficient families.
    Coeffs(commands::CoeffsArgs),
    /// Compare Halley's Lambert W with its log-log series.
    Wcheck(commands::WcheckArgs),
}

/// Output options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Why a subcommand stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<kiv_zeros::Error> for Failure {
    fn from(e: kiv_zeros::Error) -> Self {
        if e.is_computational() {
            Failure::Compute(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn emit(report: &output::Report, out: &OutputArgs) -> io::Result<()> {
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(out.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(out.format, &mut lock)?;
            lock.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Eval(a) => (commands::eval(a), &a.output),
        Command::Zeros(a) => (commands::zeros(a), &a.output),
        Command::Table1(a) => (commands::table1(a), &a.output),
        Command::Coeffs(a) => (commands::coeffs(a), &a.output),
        Command::Wcheck(a) => (commands::wcheck(a), &a.output),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.report, out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
