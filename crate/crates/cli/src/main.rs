use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use leibenson_cli::commands::dispatch;
use leibenson_cli::{exit, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Params,
    Simulate,
    VerifyExact,
    Finiteness,
    SobolevProbe,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Params => "params",
            Self::Simulate => "simulate",
            Self::VerifyExact => "verify-exact",
            Self::Finiteness => "finiteness",
            Self::SobolevProbe => "sobolev-probe",
        }
    }
}

/// Finite-extinction experiments for the weighted Leibenson equation.
///
/// Exit codes: 0 ok, 1 input error, 2 negative verdict, 3 no extinction by t_max.
#[derive(Debug, Parser)]
#[command(name = "leibenson", version)]
struct Cli {
    command: Command,
    /// Config file with one `key = value` per line.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a config key (repeatable).
    #[arg(short, long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Print the effective config and exit.
    #[arg(long)]
    dump_config: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::INPUT_ERROR as u8
            } else {
                0
            });
        }
    };
    let code = match execute(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            exit::INPUT_ERROR
        }
    };
    ExitCode::from(code as u8)
}

fn execute(cli: &Cli) -> Result<i32, String> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path).map_err(|e| e.to_string())?,
        None => RunConfig::default(),
    };
    for s in &cli.set {
        cfg.apply_override(s).map_err(|e| e.to_string())?;
    }
    if cli.dump_config {
        print!("{}", cfg.dump());
        return Ok(exit::OK);
    }
    let outcome = dispatch(cli.command.name(), &cfg).map_err(|e| e.to_string())?;
    print!("{}", outcome.report);
    Ok(outcome.code)
}
