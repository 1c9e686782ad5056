use std::process::ExitCode;

use clap::Parser;

use sprime::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.document)
                .expect("documents assembled here always serialize");
            println!("{text}");
            if let Some(path) = &outcome.write_to {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
