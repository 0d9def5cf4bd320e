use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod input;
mod text;
mod verify;

use args::Cli;

/// Failure of a single invocation, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// The input was well formed but the mathematics refuses it.
    Domain(String),
    /// Unreadable, malformed or inconsistent input.
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) => m,
        }
    }
}

impl From<antidual::error::Error> for Failure {
    fn from(e: antidual::error::Error) -> Self {
        if e.is_domain_error() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.policy().and_then(|pol| commands::dispatch(&cli, &pol));
    match outcome {
        Ok(report) => {
            let rendered = if cli.globals.text {
                text::render(&report)
            } else {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(rendered.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if report.get("passed") == Some(&serde_json::Value::Bool(false)) {
                eprintln!("antidual: verification found deviations beyond tolerance");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("antidual: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
