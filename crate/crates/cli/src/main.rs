use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use qudit_cli::args::Cli;
use qudit_cli::error::CliError;

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json_line());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return fail(CliError::Config(first.to_string()));
        }
    };
    match qudit_cli::run(&cli) {
        Ok(outcome) => {
            if cli.output.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if let Err(e) = stdout.write_all(&outcome.bytes) {
                    return fail(CliError::Io(e.to_string()));
                }
            }
            if outcome.dataset.failed > 0 {
                eprintln!("{}", serde_json::json!({ "failed_nodes": outcome.dataset.failed, "rows": outcome.dataset.rows.len() }));
            }
            if let Some(report) = outcome.validation {
                eprintln!("{}", serde_json::json!({ "validated": true, "rows": report.rows, "physical_rows": report.physical_rows }));
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
