//! `polydiv` — exact polyhedral-divisor calculus on the command line.
//!
//! Operations run against a session (named models, weight matrices, covers
//! and divisors); without `--session FILE` a builtin session with the
//! Russell cubic and one threefold of each kind is loaded.  Exit codes:
//! 0 success, 1 a domain error (the calculus rejects the inputs), 2 a parse
//! or usage error.

mod builtin;
mod errors;
mod ops;
mod report;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polydiv::Error;

use crate::errors::CliError;
use crate::report::Format;
use crate::session::Session;

#[derive(Parser)]
#[command(name = "polydiv", about = "Exact polyhedral-divisor calculus", version)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Session file defining models, weights, covers and divisors.
    #[arg(long, global = true, value_name = "FILE")]
    session: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Downgrade a linear torus action to rays and coefficient polytopes.
    Downgrade {
        /// Name of a weight-matrix entry in the session.
        weights: String,
        /// Extra coordinate labels, e.g. `2=E,3=D`.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Evaluate a divisor at a weight-cone direction.
    Eval {
        divisor: String,
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Push a divisor forward along a lattice map `[(row),(row),..]`.
    Push { divisor: String, matrix: String },
    /// Pull a divisor back along a cover.
    Pull { cover: String, divisor: String },
    /// Descend an invariant divisor through a cover.
    Descend { cover: String, divisor: String },
    /// Quotient by the order-n subgroup of the torus with the given weight.
    QuotientTorus {
        divisor: String,
        order: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Decide linear equivalence and produce a witness when possible.
    Equiv { d1: String, d2: String },
    /// Run a stage chain: `<divisor> | torus <order> <w> | descend <cover>`.
    Pipeline { spec: String },
    /// Worked threefold presentations: `cubic`, `first d a2 a3`,
    /// `second d l a2 a3`.
    Kr {
        variant: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
    /// Structural validity report for a divisor.
    Check { divisor: String },
    /// Inspect session files.
    Session {
        #[command(subcommand)]
        cmd: SessionCmd,
    },
}

#[derive(Subcommand)]
enum SessionCmd {
    /// Print the active session in canonical text form.
    Dump,
    /// Parse a session file and verify it round-trips.
    Check { file: PathBuf },
}

fn load_session(path: &Option<PathBuf>) -> Result<Session, CliError> {
    match path {
        None => Ok(builtin::builtin_session()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::parse(format!("cannot read {}: {e}", p.display())))?;
            session::parse_session(&text)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if let Cmd::Session { cmd } = &cli.cmd {
        return match cmd {
            SessionCmd::Dump => {
                let s = load_session(&cli.session)?;
                Ok(session::serialize_session(&s))
            }
            SessionCmd::Check { file } => {
                let text = std::fs::read_to_string(file)
                    .map_err(|e| CliError::parse(format!("cannot read {}: {e}", file.display())))?;
                Ok(ops::session_check_op(&text)?.render(cli.format))
            }
        };
    }
    let s = load_session(&cli.session)?;
    let report = match &cli.cmd {
        Cmd::Downgrade { weights, labels } => ops::downgrade_op(&s, weights, labels.as_deref())?,
        Cmd::Eval { divisor, u } => ops::eval_op(&s, divisor, u)?,
        Cmd::Push { divisor, matrix } => ops::push_op(&s, divisor, matrix)?,
        Cmd::Pull { cover, divisor } => ops::pull_op(&s, cover, divisor)?,
        Cmd::Descend { cover, divisor } => ops::descend_op(&s, cover, divisor)?,
        Cmd::QuotientTorus { divisor, order, weight } => {
            ops::quotient_torus_op(&s, divisor, order, weight)?
        }
        Cmd::Equiv { d1, d2 } => ops::equiv_op(&s, d1, d2)?,
        Cmd::Pipeline { spec } => ops::pipeline_op(&s, spec)?,
        Cmd::Kr { variant, params } => ops::kr_op(variant, params)?,
        Cmd::Check { divisor } => ops::check_op(&s, divisor)?,
        Cmd::Session { .. } => unreachable!("handled above"),
    };
    Ok(report.render(cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("ParseError: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{e}");
            // a library-level parse failure is still a usage problem
            if matches!(e, Error::ParseError(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
