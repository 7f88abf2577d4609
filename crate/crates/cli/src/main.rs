mod commands;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leavitt::Field;

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Exact computation in Leavitt path algebras")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Graph file (`vertex`, `edge id: src -> dst`, `infinite` lines).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum monomial length for sampled elements.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub len_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Accept `~tail:` identifiers, e.g. in graphs written by `desing`.
    #[arg(long, global = true)]
    pub allow_reserved: bool,
    /// First length bound of the witness search.
    #[arg(long, global = true)]
    pub start_bound: Option<usize>,
    /// Last length bound of the witness search.
    #[arg(long, global = true)]
    pub max_bound: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an element.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Multiply elements left to right.
    Mul {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Degree of a homogeneous element.
    Degree {
        #[arg(allow_hyphen_values = true)]
        element: String,
        /// Edge weights `name=w,...` replacing the canonical grading.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Homogeneous inner inverse of a homogeneous element.
    Witness {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Inner inverse of any element, searching all degrees.
    WitnessAny {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Idempotent generator of the right ideal spanned by the elements.
    Idgen {
        #[arg(required = true, allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Witness search on seeded random homogeneous elements.
    Suite {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Maximum number of terms per element.
        #[arg(long, default_value_t = 3)]
        terms: usize,
        /// Include wall-clock time per trial (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Remove one source, or all sources when no vertex is given.
    Desource {
        #[arg(long)]
        vertex: Option<String>,
        /// Write the graph here and the generator mapping to `<out>.map`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach tails of the given depth at sinks and flagged vertices.
    Desing {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corner skew Laurent structure of the algebra.
    Corner {
        #[command(subcommand)]
        action: CornerAction,
    },
    /// Graded matrices over the algebra.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// Bounded search for an invertible inner inverse (prime fields only).
    UnitSearch {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 3)]
        inner_bound: usize,
        #[arg(long, default_value_t = 3)]
        inverse_bound: usize,
        #[arg(long, default_value_t = 1 << 16)]
        max_points: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CornerAction {
    /// Show t+, t-, p and the chosen edges.
    Realize,
    /// Witness of a homogeneous element through the corner skew structure.
    Witness {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Shift vector, e.g. `0,1`; its length is the matrix size.
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: String,
    /// Entry `i,j=element` with 1-based indices; repeatable.
    #[arg(long = "entry", allow_hyphen_values = true)]
    pub entries: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum MatrixAction {
    Degree(MatrixArgs),
    /// Witness of a single-entry matrix `e_ij(a)` as `e_ji(b)`.
    Transport(MatrixArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.global, cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.render(cli.global.format));
            ExitCode::from(outcome.exit)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit)
        }
    }
}
