//! `lgl`: explore blocks, export closure posets, tabulate KL polynomials and
//! check the comparison diagram from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 malformed input,
//! 3 a mathematical precondition does not hold.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "lgl", version, about = "Grothendieck-group computations for GL_n blocks")]
pub struct Cli {
    /// Largest weight-function mass accepted.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub mass_bound: u64,
    /// Largest rank n accepted for real blocks.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_bound: u64,
    /// KL polynomial cache, loaded before and saved after the command.
    #[arg(long, global = true)]
    pub kl_cache: Option<PathBuf>,
    /// Output format; posets default to dot, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the orbits of a weight function with dimensions and full-rank flags.
    Orbits {
        #[arg(long)]
        phi: PathBuf,
    },
    /// Closure order on orbits as a covering-relation graph.
    Poset {
        #[arg(long)]
        phi: PathBuf,
    },
    /// KL polynomials of S_n: one pair, or the full table.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "w")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        w: Option<String>,
    },
    /// Dump the comparison block of a weight function.
    Compare {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long = "eL", alias = "e-l", default_value = "1/2", allow_hyphen_values = true)]
        e_l: String,
        #[arg(long = "eR", alias = "e-r", default_value = "-1/2", allow_hyphen_values = true)]
        e_r: String,
    },
    /// Image under Γ of the standard module labelled by a permutation.
    Gamma {
        #[arg(long)]
        phi: PathBuf,
        /// One-line notation, e.g. `21` or `3,1,2`.
        #[arg(long)]
        w: String,
        #[arg(long = "eL", alias = "e-l", default_value = "1/2", allow_hyphen_values = true)]
        e_l: String,
        #[arg(long = "eR", alias = "e-r", default_value = "-1/2", allow_hyphen_values = true)]
        e_r: String,
    },
    /// Partial derivative of a p-adic standard element (KElement JSON).
    Derive {
        #[arg(long)]
        elem: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Use 𝒟^k (left endpoints) instead of ^k𝒟.
        #[arg(long)]
        right: bool,
        /// Keep only terms of this weight.
        #[arg(long)]
        project: Option<PathBuf>,
    },
    /// Translate a real standard module between two blocks.
    Translate {
        /// Source λ_L, comma separated.
        #[arg(long = "from-l", allow_hyphen_values = true)]
        from_l: String,
        /// Source λ_R, comma separated.
        #[arg(long = "from-r", allow_hyphen_values = true)]
        from_r: String,
        /// Target λ_L; with --to-r replaces the step options.
        #[arg(long = "to-l", allow_hyphen_values = true, requires = "to_r")]
        to_l: Option<String>,
        #[arg(long = "to-r", allow_hyphen_values = true, requires = "to_l")]
        to_r: Option<String>,
        /// Step position.
        #[arg(long, conflicts_with = "to_l")]
        j: Option<usize>,
        /// Step length.
        #[arg(long, conflicts_with = "to_l")]
        c: Option<usize>,
        /// Step on λ_R instead of λ_L.
        #[arg(long)]
        right: bool,
        /// Label of the standard module in one-line notation.
        #[arg(long)]
        w: String,
    },
    /// Check the comparison diagram for one datum or a directory of weights.
    Verify {
        #[arg(long, conflicts_with = "batch", required_unless_present = "batch")]
        phi: Option<PathBuf>,
        #[arg(long, requires = "k")]
        c: Option<u32>,
        #[arg(long, allow_hyphen_values = true, requires = "c")]
        k: Option<String>,
        #[arg(long = "eL", alias = "e-l", default_value = "1/2", allow_hyphen_values = true)]
        e_l: String,
        #[arg(long = "eR", alias = "e-r", default_value = "-1/2", allow_hyphen_values = true)]
        e_r: String,
        /// Left case: 𝒟^k with k below r.
        #[arg(long)]
        left: bool,
        /// Run every admissible datum for each `*.json` weight in this directory.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Dimensions of E_φ, G_φ and of every orbit.
    Dims {
        #[arg(long)]
        phi: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let newline = if out.text.ends_with('\n') { "" } else { "\n" };
            // a closed pipe (`lgl … | head`) is not an error
            let _ = write!(stdout, "{}{newline}", out.text);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
