//! Command-line front end: descriptor loading, classification tables,
//! pairing tables, extinction lists, diffraction data and self-checks.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod selfcheck;

use args::{Cli, Command};
use error::{CliResult, EXIT_OK, EXIT_SELFCHECK};
use output::{emit, render};

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Classify { common, dihedral_2d } => {
            let records = commands::load_lattices(&common, true)?
                .iter()
                .map(|l| commands::classify(l, dihedral_2d))
                .collect::<CliResult<Vec<_>>>()?;
            emit(&render(&records, common.format)?, common.out.as_deref())?;
        }
        Command::Invariants { common } => {
            let l = commands::single_lattice(&common)?;
            let rows = commands::invariants(&l, common.class)?;
            emit(&render(&rows, common.format)?, common.out.as_deref())?;
        }
        Command::Extinctions { common } => {
            let l = commands::single_lattice(&common)?;
            let rows = commands::extinctions(&l, common.class, common.kmax)?;
            emit(&render(&rows, common.format)?, common.out.as_deref())?;
        }
        Command::Diffract { common } => {
            let l = commands::single_lattice(&common)?;
            let rows = commands::diffract(&l, common.class, common.kmax, common.seed)?;
            emit(&render(&rows, common.format)?, common.out.as_deref())?;
        }
        Command::Selfcheck { common, modulus, inject_sign_flip } => {
            let lattices = commands::load_lattices(&common, true)?;
            let opts = selfcheck::SelfcheckOptions { modulus, flip_pairing: inject_sign_flip };
            let lines = selfcheck::run_selfcheck(&lattices, &opts)?;
            emit(&render(&lines, common.format)?, common.out.as_deref())?;
            if lines.iter().any(|l| !l.passed) {
                return Ok(EXIT_SELFCHECK);
            }
        }
    }
    Ok(EXIT_OK)
}
