//! `anyon`: batch data generation for two-anyon scattering.
//!
//! Every subcommand writes one table as CSV or JSON, preceded by a header
//! with the program version, units and all resolved parameters. Exit codes:
//! 0 success, 2 invalid parameters, 3 numerical non-convergence. Nothing is
//! written when a command fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cli;
mod commands;
mod config;
mod error;
mod grid;
mod output;
mod plot;

use std::io::Write;

use clap::Parser;

use crate::cli::{Cli, Format};
use crate::error::{CliError, CliResult};

fn run(args: Vec<String>) -> CliResult<()> {
    let args = config::expand_config(args)?;
    let cli = Cli::try_parse_from(&args).unwrap_or_else(|e| e.exit());
    if cli.plot_script.is_some() && (cli.output.is_none() || cli.format != Format::Csv) {
        return Err(CliError::Invalid("--plot-script needs --output and CSV format".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().map_err(|e| CliError::Invalid(e.to_string()))?;
    let doc = pool.install(|| commands::run(&cli.command))?;
    let text = match cli.format {
        Format::Csv => output::render_csv(&doc),
        Format::Json => output::render_json(&doc),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Invalid(e.to_string()))?,
    }
    if let (Some(script), Some(data)) = (&cli.plot_script, &cli.output) {
        let body = plot::script(&doc, &data.display().to_string());
        std::fs::write(script, body).map_err(|e| CliError::Invalid(format!("{}: {e}", script.display())))?;
    }
    Ok(())
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if let Err(e) = run(args) {
        eprintln!("anyon: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
