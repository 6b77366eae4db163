//! Command-line front end: encoding, benchmark experiments and run
//! manifests.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;

use log::info;

pub use args::{Cli, Command};
pub use error::{CliError, ErrorKind, Result};
pub use manifest::{manifest_path, RunManifest};

/// Resolves defaults and flag combinations, runs the command, then writes
/// its manifest next to the output.
pub fn run_command(command: &Command) -> Result<()> {
    let resolved = match command {
        Command::Replay(r) => {
            let m = RunManifest::read(&r.manifest)?;
            return run_command(&m.to_command(r.out.clone())?);
        }
        Command::Encode(a) => Command::Encode(commands::resolve_encode(a)?),
        other => other.clone(),
    };
    match &resolved {
        Command::Encode(a) => {
            let s = commands::encode(a)?;
            info!("encoded {} molecules, {} failed", s.written, s.failed);
        }
        Command::GedBench(a) => {
            commands::ged_bench(a)?;
        }
        Command::KnnEval(a) => {
            commands::knn_eval(a)?;
        }
        Command::BoRun(a) => {
            commands::bo_run(a)?;
        }
        Command::GenCorpus(a) => {
            commands::gen_corpus(a)?;
        }
        Command::Replay(_) => unreachable!(),
    }
    let manifest = RunManifest::for_command(&resolved).expect("non-replay command");
    manifest.write()?;
    Ok(())
}

/// Runs `cli`, inside a dedicated thread pool when a thread count is set.
pub fn run(cli: &Cli) -> Result<()> {
    match cli.threads {
        Some(0) => Err(CliError::config("--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::config(e.to_string()))?
            .install(|| run_command(&cli.command)),
        None => run_command(&cli.command),
    }
}
