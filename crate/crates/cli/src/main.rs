use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use powergraph::commands::write_documents;
use powergraph::config::Format;
use powergraph::{resolve, run, Cli, CliError, EXIT_MISMATCH, EXIT_OK};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve(cli, std::env::vars())?;
    let outcome = run(&cfg)?;
    match &cfg.out {
        Some(dir) => write_documents(dir, &outcome.documents)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let many = outcome.documents.len() > 1;
            for d in &outcome.documents {
                if many && cfg.format != Format::Json {
                    writeln!(stdout, "== {} ==", d.name).ok();
                }
                stdout.write_all(d.body.as_bytes()).ok();
            }
        }
    }
    Ok(if outcome.mismatch { EXIT_MISMATCH } else { EXIT_OK })
}
