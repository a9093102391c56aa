use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use s1deg::{exit, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::DOMAIN as u8),
            };
        }
    };
    match s1deg::execute(&cli) {
        Ok(out) => {
            let rendered = out.render(cli.format, cli.pretty);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(exit::DOMAIN as u8);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
