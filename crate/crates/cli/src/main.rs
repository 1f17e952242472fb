//! `tropcomm` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a checked assertion fails, 2 for usage,
//! input or parse errors.

mod commands;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tropcomm", version, about = "Exact max-plus commutant toolkit")]
pub struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, env = "TROPCOMM_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide AX = XA and classify the pair.
    CheckCommute { a: PathBuf, x: PathBuf },
    /// Kleene star A*.
    Kleene { a: PathBuf },
    /// Tropical power A^k.
    Pow { a: PathBuf, k: usize },
    /// The matrix underline(A).
    Underline { a: PathBuf },
    /// The matrix overline(A).
    Overline {
        a: PathBuf,
        /// Include the bound matrix H of {X : A <= underline(X)}.
        #[arg(long)]
        dump_h: bool,
        /// Include its tight form H*.
        #[arg(long)]
        dump_hstar: bool,
    },
    /// Dimension of {X : A <= underline(X)}.
    Dim { a: PathBuf },
    /// Constraint system of Omega_w(A).
    OmegaW {
        a: PathBuf,
        #[arg(long)]
        winner: PathBuf,
    },
    /// Feasibility, dimension and a sample point of a constraint system.
    Feasible { system: PathBuf },
    /// Sample the boxes I <= X <= K(m(A)) and K(M(A)) <= X <= 0.
    NeighTest {
        a: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Band matrices P and Q.
    #[command(subcommand)]
    Perturb(PerturbCommand),
    /// Residuation test x ∈ span(A).
    SpanMember {
        a: PathBuf,
        /// Comma-separated coordinates, e.g. 1,-2,0.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decide span(A) ⊇ span(B).
    SpanContains { a: PathBuf, b: PathBuf },
    /// Render {x3 = 0} ∩ span(A) for 3×3 matrices as SVG panels.
    Render {
        #[arg(required = true)]
        matrices: Vec<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Comma-separated panel captions.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    /// Exhaustive inclusion checks over a grid of 3×3 matrices.
    GridOracle {
        a: PathBuf,
        /// Comma-separated alphabet; must contain 0.
        #[arg(long, allow_hyphen_values = true, default_value = "0,-1,-2,-inf")]
        alphabet: String,
        #[arg(long, default_value_t = tropcomm::oracle::DEFAULT_GRID_CAP)]
        cap: u64,
    },
    /// Run every built-in reference reproduction.
    PaperSuite,
}

#[derive(Args, Debug)]
pub struct BandArgs {
    /// Comma-separated positive magnitudes p.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: String,
}

#[derive(Subcommand, Debug)]
pub enum PerturbCommand {
    /// P(-p, -eps).
    MakeP(BandArgs),
    /// Q(-p, -eps).
    MakeQ(BandArgs),
    /// Check the band product identities for (p, delta, eps).
    Check {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Seeded pair with entries in [2r, r].
    BoxPair {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(report) => match report.emit(&cli) {
            Ok(()) => ExitCode::from(if report.ok { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
