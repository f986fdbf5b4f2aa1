use clap::Parser;
use hardylab_cli::{init_threads, run, write_output, Cli, CliError};
use std::process::ExitCode;

fn emit(cli: &Cli, report: &str, artifacts: &[(String, String)]) -> Result<(), CliError> {
    match &cli.run.out {
        Some(dir) => write_output(
            dir,
            &hardylab_cli::Output {
                report: report.to_string(),
                artifacts: artifacts.to_vec(),
            },
        ),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads()
        .and_then(|_| run(&cli))
        .and_then(|out| emit(&cli, &out.report, &out.artifacts));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardylab: {e}");
            if let Some(partial) = &e.partial {
                let _ = emit(&cli, partial, &[]);
            }
            ExitCode::from(e.kind.code() as u8)
        }
    }
}
