use std::io::Write;

use clap::Parser;
use zeta_extremal::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    let outcome = cli::run(&args);
    if outcome.failed {
        eprint!("{}", outcome.output);
        std::process::exit(outcome.code);
    }
    let written = match cli::out_path(&args) {
        Some(path) => std::fs::write(path, &outcome.output),
        None => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write output: {e}");
        std::process::exit(cli::EXIT_USAGE);
    }
    std::process::exit(outcome.code);
}
