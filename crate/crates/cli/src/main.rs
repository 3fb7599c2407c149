use clap::error::ErrorKind;
use clap::Parser;

use dmdbg_cli::cli::{Cli, Command};
use dmdbg_cli::commands;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprintln!("{err}");
            eprintln!("error-code: usage");
            std::process::exit(2);
        }
    };

    dmdbg_cli::init_thread_pool_from_env();

    let result = match &cli.command {
        Command::Extract(args) => commands::run_extract(args),
        Command::Evaluate(args) => commands::run_evaluate(args),
        Command::Bench(args) => commands::run_bench_cmd(args),
        Command::Synth(args) => commands::run_synth(args),
    };

    if let Err(err) = result {
        eprintln!("error: {err}");
        eprintln!("error-code: {}", err.token());
        std::process::exit(err.exit_code());
    }
}
