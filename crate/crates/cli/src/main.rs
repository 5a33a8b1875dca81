use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use spinlab_cli::{run, Cli, CliError, Format};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    // clap exits with status 2 on its own parse errors.
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("spinlab: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("spinlab: {e}");
            return ExitCode::FAILURE;
        }
    };
    let text = match cli.format {
        Format::Csv => outcome.report.to_csv(),
        Format::Json => outcome.report.to_json(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("spinlab: cannot write report: {e}");
        return ExitCode::FAILURE;
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}
