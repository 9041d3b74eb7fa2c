use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eigenfilter_cli::output::summary_csv;
use eigenfilter_cli::run::{design_command, eval_command, repro_command};
use eigenfilter_cli::CliError;

#[derive(Parser)]
#[command(
    name = "eigenfilter",
    version,
    about = "Eigenfilter FIR and wideband beamformer design"
)]
struct Cli {
    /// Multiply every design grid density by this factor.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    grid_scale: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Design from a JSON document.
    Design {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one preset, or `all`, in both modes and write a summary.
    Repro {
        preset: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute metrics for a stored weights file.
    Eval {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let scale = cli.grid_scale as usize;
    match cli.command {
        Command::Design { spec, out } => {
            for o in design_command(&spec, out.as_deref(), scale)? {
                println!("{}", o.record.to_json());
            }
        }
        Command::Repro { preset, out } => {
            let rows = repro_command(&preset, &out, scale)?;
            print!("{}", String::from_utf8_lossy(&summary_csv(&rows)?));
        }
        Command::Eval { weights, spec } => {
            println!("{}", eval_command(&weights, &spec, scale)?.to_json());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::validation("arguments", e.to_string().trim_end());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
