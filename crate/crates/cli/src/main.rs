use std::process::ExitCode;

use clap::Parser;

use tlfree_cli::{dispatch, error_code, Cli, RunConfig};

fn main() -> ExitCode {
    env_logger::init();
    let config = match RunConfig::from_cli(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e) as u8);
        }
    };
    let outcome = dispatch(&config);
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.report),
    }
    if outcome.code != 0 {
        if let Some(err) = serde_json::from_str::<serde_json::Value>(&outcome.report)
            .ok()
            .and_then(|v| v.get("error").and_then(|e| e.as_str()).map(String::from))
        {
            eprintln!("error: {err}");
        }
    }
    ExitCode::from(outcome.code as u8)
}
