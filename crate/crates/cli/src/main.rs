use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use qsmoments_cli::{run, Cli, CliResult};

fn emit(cli: &Cli) -> CliResult<Vec<&'static str>> {
    let outcome = run(cli)?;
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    outcome.table.write(cli.format, &mut out)?;
    out.flush()?;
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match emit(&cli) {
        Ok(failed) if failed.is_empty() => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("selftest failed: {}", failed.join(", "));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("qsmoments: {e}");
            e.exit_code()
        }
    }
}
