use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use minkowski_cli::output::{ErrorEnvelope, Format, Meta};
use minkowski_cli::{run, Cli, CliError};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| out.render(cli.format));
    match result.and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let record = ErrorEnvelope {
                    meta: Meta::new("error", Default::default()),
                    error: e.to_string(),
                };
                if let Ok(s) = serde_json::to_string_pretty(&record) {
                    println!("{s}");
                }
            }
            ExitCode::FAILURE
        }
    }
}
