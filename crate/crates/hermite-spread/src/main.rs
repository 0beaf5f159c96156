use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hermite_spread::cli::{Cli, Format};
use hermite_spread::commands::{run, CliError, Context};

fn execute(cli: &Cli) -> Result<(), CliError> {
    let ctx = Context::new(cli.common.precision_bits, cli.common.digits, cli.common.no_limits)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.common.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let record = pool.install(|| run(&cli.command, &ctx))?;
    let out: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(out);
    match cli.common.format {
        Format::Csv => record.write_csv(&mut out)?,
        Format::Json => record.write_json(&mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hermite-spread: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
