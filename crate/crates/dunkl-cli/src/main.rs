//! `dunkl` — command-line front end for the `dunkl-core` library.
//!
//! Subcommands cover root-system inspection, Dunkl operator application, the
//! kappa bilinear form, numeric kernel evaluation, harmonic decompositions,
//! planar harmonic bases, nonsymmetric Jack polynomials, Macdonald-Mehta
//! constants, and the named verification suites.
//!
//! Exit codes: 0 on success, 1 for mathematical failures (singular
//! parameters, unreachable tolerances, failing verification suites), 2 for
//! usage errors.
//!
//! Set `DUNKL_CACHE_DIR` to persist the intertwining-matrix and Jack memo
//! caches between runs; the cache is advisory and never changes results.

mod cache;
mod commands;
mod options;

use clap::{Parser, Subcommand};

/// An error carrying the process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    /// Wrap a library error; these exit with code 1.
    pub fn math(e: dunkl_core::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<dunkl_core::Error> for CliError {
    fn from(e: dunkl_core::Error) -> Self {
        CliError::math(e)
    }
}

#[derive(Parser)]
#[command(
    name = "dunkl",
    version,
    about = "Exact Dunkl operator calculus for finite reflection groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a root system: roots, degrees, order, reflection classes.
    Roots {
        /// Group type: A, B, D, Z2, I2, G2, F4, E6-E8, H3, H4 (rank inline
        /// as A2, i2:5, or via --rank).
        #[arg(long = "type", short = 't')]
        group: String,
        /// Rank (or dihedral order m for I2, copies for Z2).
        #[arg(long)]
        rank: Option<usize>,
        /// Emit JSON.
        #[arg(long)]
        json: bool,
    },
    /// Apply the Dunkl operator in a direction to a polynomial.
    Apply {
        #[arg(long = "type", short = 't')]
        group: String,
        #[arg(long)]
        rank: Option<usize>,
        /// Multiplicity: `symbolic`, or exact values (`1/2`, `0.7`), comma
        /// separated per class.
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        /// Direction vector, comma separated.
        #[arg(long)]
        dir: String,
        /// Polynomial in variables x1, x2, ...
        #[arg(long)]
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the kappa bilinear form on two polynomials.
    Form {
        #[arg(long = "type", short = 't')]
        group: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        /// First polynomial.
        #[arg(long)]
        p: String,
        /// Second polynomial.
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the Dunkl kernel at numeric points with a certified tail.
    Kernel {
        #[arg(long = "type", short = 't')]
        group: String,
        #[arg(long)]
        rank: Option<usize>,
        /// Numeric multiplicity values (symbolic is rejected here).
        #[arg(long)]
        kappa: String,
        /// First argument, comma separated; repeat --x/--y for a point grid.
        #[arg(long)]
        x: Vec<String>,
        /// Second argument, comma separated.
        #[arg(long)]
        y: Vec<String>,
        /// Certified tail tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
        /// Emit CSV rows (one per point pair).
        #[arg(long)]
        csv: bool,
    },
    /// Project a polynomial onto harmonics, or list a degree's harmonic
    /// basis.
    Harmonic {
        #[arg(long = "type", short = 't')]
        group: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        /// Polynomial to project.
        #[arg(long)]
        poly: Option<String>,
        /// Degree whose harmonic basis to list (alternative to --poly).
        #[arg(long)]
        basis: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Planar harmonic bases for the dihedral groups I2(m).
    Harmonics {
        /// Dihedral group, e.g. i2:5.
        #[arg(long)]
        group: String,
        /// Multiplicity values (one for odd m, two for even m), or
        /// `symbolic`.
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        /// Largest degree to include.
        #[arg(long = "max-degree")]
        max_degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Nonsymmetric and symmetric Jack polynomials (type A).
    Jack {
        #[command(subcommand)]
        sub: JackCommand,
    },
    /// Macdonald-Mehta constants: exact Gamma-product records, optionally
    /// evaluated numerically.
    Mm {
        #[arg(long = "type", short = 't')]
        group: String,
        #[arg(long)]
        rank: Option<usize>,
        /// Evaluate numerically at --kappa0/--kappa1.
        #[arg(long)]
        numeric: bool,
        /// First multiplicity value for numeric evaluation.
        #[arg(long)]
        kappa0: Option<f64>,
        /// Second multiplicity value (two-class types).
        #[arg(long)]
        kappa1: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run named verification suites (ac1..ac14 or their aliases).
    Verify {
        /// Suite identifier, alias, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized cases.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the version.
    Version,
}

#[derive(Subcommand)]
enum JackCommand {
    /// The nonsymmetric Jack polynomial zeta_alpha.
    Zeta {
        /// Number of variables.
        #[arg(long)]
        d: usize,
        /// Composition, comma separated, length d.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        #[arg(long)]
        json: bool,
    },
    /// The closed-form norm of zeta_alpha under the kappa form.
    Norm {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        #[arg(long)]
        json: bool,
    },
    /// The symmetric Jack polynomial j_lambda with its norm.
    Symmetric {
        /// Partition, comma separated; its length fixes d.
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    // Restore default SIGPIPE behavior so piping into `head` and friends
    // terminates quietly instead of panicking on a closed stdout.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
