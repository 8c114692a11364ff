mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind as ClapKind;
use clap::Parser;
use pbpseg::ErrorKind;

use args::{Cli, Command};
use commands::StageError;

const EXIT_IO: u8 = 2;
const EXIT_PARAM: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ClapKind::DisplayHelp | ClapKind::DisplayVersion | ClapKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_PARAM),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(StageError { stage, error }) => {
            eprintln!("error [{stage}]: {error}");
            ExitCode::from(match error.kind() {
                ErrorKind::Io => EXIT_IO,
                ErrorKind::Parameter => EXIT_PARAM,
                ErrorKind::Consistency => EXIT_INTERNAL,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), StageError> {
    use commands::Tag;
    match cli.command {
        Command::Segment { input, knobs } => {
            let settings = knobs.resolve().at("config")?;
            let summary = commands::segment(&input, &settings)?;
            println!("{}", summary.line());
        }
        Command::Inspect {
            input,
            at,
            matrix,
            knobs,
        } => {
            let settings = knobs.resolve().at("config")?;
            print!("{}", commands::inspect(input.as_deref(), &at, matrix.as_deref(), &settings)?);
        }
        Command::Sweep { input, knobs } => {
            let settings = knobs.resolve().at("config")?;
            print!("{}", commands::sweep(&input, &settings)?);
        }
    }
    Ok(())
}
