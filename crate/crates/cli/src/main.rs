//! `isokernel`: decide, expand and numerically verify strict positive
//! definiteness of isotropic kernels described by kernel spec documents.

mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Outcome};

/// Exit status for unreadable or invalid input.
const EXIT_INPUT: u8 = 1;
/// Exit status when the space has no point model to sample.
const EXIT_NO_POINT_MODEL: u8 = 2;

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("ISOKERNEL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("ISOKERNEL_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(EXIT_INPUT);
    }
    match commands::run(&cli) {
        Ok(Outcome { exit }) => ExitCode::from(exit),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                commands::CliError::Core(isokernel::Error::UnsupportedSpace(_)) => ExitCode::from(EXIT_NO_POINT_MODEL),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}
