//! Command-line front end for `besselrec-core`.
//!
//! `eval` writes one record per `z` as NDJSON or CSV, `coeffs` dumps series
//! and closed-form coefficients, `rate` evaluates the `e+ e- -> nu nubar` rate
//! and `verify` runs the cross-validation suites.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::io::Write;

pub use args::Cli;
pub use error::CliError;

use args::{Command, OutputFormat};
use config::Config;

/// Runs one parsed command. Output is fully computed before anything is
/// written, so errors never leave partial output behind.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval(a) => {
            let records = commands::eval::eval(a)?;
            match a.format {
                OutputFormat::Json => format::write_json(&records, out),
                OutputFormat::Csv => format::write_csv(&records, out),
            }
        }
        Command::Coeffs(a) => Ok(writeln!(out, "{}", commands::coeffs::coeffs(a)?)?),
        Command::Rate(a) => {
            let config = Config::load(cli.config.as_deref())?;
            Ok(writeln!(out, "{}", commands::rate::rate(a, &config)?)?)
        }
        Command::Verify(a) => {
            let report = commands::verify::verify(a)?;
            write!(out, "{}", report.table())?;
            report.into_result()
        }
    }
}
