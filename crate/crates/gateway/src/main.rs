use std::process::ExitCode;

use clap::Parser;
use tacton_gateway::cli::{run, serve, serve_config, Cli, Cmd};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Serve {
            config,
            listen,
            virtual_time,
        } => {
            tracing_subscriber::fmt()
                .with_writer(std::io::stderr)
                .init();
            serve_config(cli.catalog, config, listen, virtual_time)
                .and_then(|c| tokio::runtime::Runtime::new()?.block_on(serve(c)))
        }
        _ => run(cli, &mut std::io::stdout().lock()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
