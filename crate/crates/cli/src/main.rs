use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use kantorlab_cli::config::{parse_config, Cli};
use kantorlab_cli::run::{run, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Status::Usage.code()),
            };
        }
    };
    let (command, opts) = cli.command.split();
    let cfg = match parse_config(command, &opts) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code());
        }
    };
    if let Some(threads) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(Status::Numeric.code());
        }
    }
    let (status, text) = run(&cfg);
    if status == Status::Usage || status == Status::Numeric {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(status.code())
}
