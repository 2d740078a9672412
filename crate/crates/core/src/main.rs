use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use roughspan::cli::{self, Cli, Format};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let parsed = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!(
                "error: {}",
                cli::first_line(&e.to_string()).trim_start_matches("error: ")
            );
            return ExitCode::from(2);
        }
    };
    match cli::run(&parsed, args[1..].join(" ")) {
        Ok(report) => {
            let out = match parsed.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
