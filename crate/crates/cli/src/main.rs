use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pathcx_cli::{run, Cli, CliError};

fn write_artifact(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|artifact| {
        write_artifact(&cli, &artifact.body)?;
        match artifact.failure {
            Some(msg) => Err(CliError::Verification(msg)),
            None => Ok(()),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("pathcx: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
