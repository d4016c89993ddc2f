use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qcohom", version, about = "Space-group classification for quasicrystals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology invariant factors, generator fingerprints and expressibility flags.
    Classify {
        #[command(flatten)]
        common: Common,
        /// For D_N in the plane, also compute via the F₂ Jordan-block count and check agreement.
        #[arg(long)]
        dihedral_2d: bool,
    },
    /// Pairing table between generator cycles of H₁ and classes of H¹.
    Invariants {
        #[command(flatten)]
        common: Common,
    },
    /// Systematic extinctions in a box of lattice vectors.
    Extinctions {
        #[command(flatten)]
        common: Common,
    },
    /// Synthetic diffraction spots respecting the chosen class.
    Diffract {
        #[command(flatten)]
        common: Common,
    },
    /// Duality, exactness, torsion and cap/cup identity checks.
    Selfcheck {
        #[command(flatten)]
        common: Common,
        /// Reduce every class to this modulus instead of the group order.
        #[arg(long)]
        modulus: Option<u64>,
        /// Negate the cap-side pairing in the cap/cup identity check.
        #[arg(long)]
        inject_sign_flip: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Built-in or QCOHOM_PRESET_DIR preset; repeatable. Defaults to all presets where that makes sense.
    #[arg(long = "preset", conflicts_with_all = ["group", "lattice"])]
    pub presets: Vec<String>,
    /// JSON group descriptor.
    #[arg(long, requires = "lattice")]
    pub group: Option<PathBuf>,
    /// JSON lattice descriptor.
    #[arg(long, requires = "group")]
    pub lattice: Option<PathBuf>,
    /// Index into the enumerated cohomology classes.
    #[arg(long)]
    pub class: Option<usize>,
    /// Box half-width for extinction and diffraction output.
    #[arg(long, default_value_t = 2)]
    pub kmax: i64,
    /// Seed for the synthetic amplitudes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}
