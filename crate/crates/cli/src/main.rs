//! `sjm`: command-line access to the symmetric joint measurement toolkit.
//!
//! Exit status is 0 when every check passes, 1 when a verification fails and
//! 2 on invalid input.

mod commands;
mod config;
mod output;

use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, NetworkMode, RunConfig};
use output::Report;

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn run(cfg: &RunConfig) -> Result<Report, config::ConfigError> {
    match cfg.command {
        Command::Basis => commands::basis(cfg),
        Command::Verify => commands::verify(cfg),
        Command::Circuit => commands::circuit(cfg),
        Command::Network { mode: NetworkMode::Table } => commands::network_table(cfg),
        Command::Network { mode: NetworkMode::Scan } => commands::network_scan(cfg),
        Command::Curve => commands::curve(cfg),
        Command::Multiqubit => commands::multiqubit(cfg),
    }
}

fn emit(report: &Report, cfg: &RunConfig) -> io::Result<()> {
    match &cfg.output {
        Some(path) => output::render(report, cfg.format, BufWriter::new(File::create(path)?)),
        None => output::render(report, cfg.format, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Err(e) = emit(&report, &cfg) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_INVALID);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(EXIT_FAILED)
    }
}
