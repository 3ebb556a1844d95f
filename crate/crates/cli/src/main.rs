use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dimgroup_cli::args::Format;
use dimgroup_cli::{config, run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let settings = match config::resolve(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    match run(&cli, &settings) {
        Ok(outcome) => {
            let text = match settings.format {
                Format::Human => outcome.report.human(),
                Format::Json => outcome.report.to_json(),
            };
            let written = match &settings.out {
                Some(path) => std::fs::write(path, text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
