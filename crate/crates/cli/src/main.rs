mod args;
mod bench;
mod problem;
mod report;
mod solve;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

pub const EXIT_NOT_CONVERGED: u8 = 2;
pub const EXIT_BREAKDOWN: u8 = 3;
pub const EXIT_INPUT: u8 = 4;

/// A failed run with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<matchamg::Error> for Failure {
    fn from(e: matchamg::Error) -> Self {
        let code = match e {
            matchamg::Error::Breakdown { .. } => EXIT_BREAKDOWN,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn init_threads(threads: Option<usize>) -> Result<(), Failure> {
    match threads {
        Some(0) => Err(Failure::config("--threads must be at least 1")),
        Some(n) => matchamg::exec::init_threads(n).map_err(Failure::config),
        None => Ok(()),
    }
}
