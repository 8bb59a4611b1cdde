use std::process::ExitCode;

use clap::Parser;
use nspot_cli::table::emit;
use nspot_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(text, code, path)| emit(&text, path.as_deref()).map(|_| code));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("nspot: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
