use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use instanton::cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.exit as u8)
        }
        Err(diag) => {
            eprintln!("{diag}");
            ExitCode::from(diag.exit as u8)
        }
    }
}
