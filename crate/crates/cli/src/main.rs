use clap::Parser;

use qcohom_cli::args::Cli;
use qcohom_cli::error::EXIT_INPUT;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match qcohom_cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("qcohom: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
