//! `wkit`: batch front end for pseudodifferential Lax hierarchies, finite
//! W-algebras and central elements of enveloping algebras.

mod lax;
mod lie;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "wkit", version, about = "Exact computations with Lax operators, W-algebras and enveloping algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Flow equations `f_t` of the k-th Lax flow `L_t = [(L^(k/n))_+, L]`.
    Hierarchy(lax::HierarchyArgs),
    /// The n-th root of a monic operator and optionally `(L^(k/n))_+`.
    Root(lax::RootArgs),
    /// Second Gelfand-Dickey bracket of the fields of `L`.
    Agd(lax::AgdArgs),
    /// Expansion of the product `(a d - h_1) ... (a d - h_m)`.
    Miura(lax::MiuraArgs),
    /// Classical finite W-algebra bracket table on the Slodowy slice.
    ClassicalW(lie::ClassicalWArgs),
    /// Quantum finite W-algebra: generators, membership and dimension checks.
    QuantumW(lie::QuantumWArgs),
    /// Capelli and power-trace central elements, with centrality checks.
    Center(lie::CenterArgs),
    /// Noncommutative pfaffians in U(o_N) and their bracket relations.
    Pfaffian(lie::PfaffianArgs),
    /// Gradings by a semisimple element and good-grading checks.
    Grading(lie::GradingArgs),
    /// Irreducibility of a highest-weight module from its tableau.
    Tableau(lie::TableauArgs),
}

/// Truncation depth shared by the operator commands.
#[derive(Debug, Args)]
pub struct TruncArgs {
    /// Keep orders down to d^-DEPTH (overrides WKIT_TRUNC).
    #[arg(long, value_name = "DEPTH")]
    trunc: Option<u32>,
}

impl TruncArgs {
    /// Lowest kept order: the flag, then `WKIT_TRUNC`, then the default.
    pub fn resolve(&self, default: i32) -> Result<i32, CliError> {
        if let Some(depth) = self.trunc {
            return Ok(-(depth as i32));
        }
        match std::env::var("WKIT_TRUNC") {
            Ok(v) => v
                .trim()
                .parse::<u32>()
                .map(|d| -(d as i32))
                .map_err(|_| CliError::Usage(format!("WKIT_TRUNC must be a non-negative integer, got `{v}`"))),
            Err(_) => Ok(default),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(wkit_core::Error),
}

impl From<wkit_core::Error> for CliError {
    fn from(e: wkit_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Hierarchy(a) => lax::hierarchy(a),
        Command::Root(a) => lax::root(a),
        Command::Agd(a) => lax::agd(a),
        Command::Miura(a) => lax::miura(a),
        Command::ClassicalW(a) => lie::classical_w(a),
        Command::QuantumW(a) => lie::quantum_w(a),
        Command::Center(a) => lie::center(a),
        Command::Pfaffian(a) => lie::pfaffian(a),
        Command::Grading(a) => lie::grading(a),
        Command::Tableau(a) => lie::tableau(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
