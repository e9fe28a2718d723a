use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use edgeworth_lab::cli::{run, Cli};
use edgeworth_lab::Error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, path) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Usage(_) | Error::UnsupportedOrder(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            };
        }
    };
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    let written = match path {
        Some(p) => fs::write(&p, &output.body).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(output.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
