mod args;
mod commands;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, GlobalArgs};
use manifest::{RunConfig, RunManifest};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(switchlab::Error),
    Io(String),
    Failed(String),
}

impl From<switchlab::Error> for CliError {
    fn from(e: switchlab::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Failed(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Domain(e) => format!("domain error: {e}"),
            CliError::Io(m) => format!("i/o error: {m}"),
            CliError::Failed(m) => m.clone(),
        }
    }
}

fn emit(global: &GlobalArgs, text: &str) -> Result<(), CliError> {
    match &global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn selftest(seed: u64) -> Result<(), CliError> {
    let results = switchlab_validation::run_all(seed);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} acceptance criteria failed")));
    }
    Ok(())
}

fn replay(path: &std::path::Path) -> Result<(), CliError> {
    let doc = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let (recorded, old) = manifest::parse(&doc)?;
    let cfg = &recorded.config;
    let payload = commands::run(&cfg.command, cfg.samples, recorded.seed)?;
    let new = manifest::payload_text(&payload, cfg.format)?;
    if new == old {
        println!("replay of `{}` (seed {}): payload identical, {} bytes", recorded.command, recorded.seed, new.len());
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "replay of `{}` (seed {}): payload differs ({} vs {} bytes)",
            recorded.command,
            recorded.seed,
            old.len(),
            new.len()
        )))
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Selftest => selftest(g.seed),
        Command::Replay { file } => replay(file),
        command => {
            let start = Instant::now();
            let payload = commands::run(command, g.samples, g.seed)?;
            let text = manifest::payload_text(&payload, g.format)?;
            let config = RunConfig {
                command: command.clone(),
                samples: g.samples,
                format: g.format,
            };
            let m = RunManifest::new(config, g.seed, start.elapsed().as_millis() as u64);
            emit(&g, &manifest::render(&m, &text))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("switchlab: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
