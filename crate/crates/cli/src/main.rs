use clap::Parser;
use randset_cli::{run, Args, ExperimentConfig};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args = Args::parse();
    let result = ExperimentConfig::from_args(&args).and_then(|cfg| run(&cfg));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("randset: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
