//! Batch front end for `ncg-core`: argument parsing, input loading, run
//! reports and the golden-file corpus runner.

mod commands;
pub mod corpus;
mod inputs;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::RunReport;

/// Exit status of a run: success, malformed input, or an honest "unknown at
/// this bound" answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    InputError = 1,
    Undetermined = 2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SheafArg {
    #[value(name = "O")]
    O,
    #[value(name = "O1")]
    O1,
}

#[derive(Debug, Parser)]
#[command(name = "ncg", version, about = "Exact computations with noncommutative algebras and spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    pub emit: Emit,
    /// Include wall-clock time in reports (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression modulo the relations.
    Nf {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Bounded completion; prints the rewriting system with its status.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Normal words up to a length.
    Basis {
        file: PathBuf,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Presentation of the path algebra of a quiver.
    PathAlgebra { quiver: PathBuf },
    /// Presentation of the tangent algebra.
    Ta { file: PathBuf },
    /// Universal localization inverting the given elements.
    Localize {
        file: PathBuf,
        #[arg(long = "elem", required = true)]
        elems: Vec<String>,
    },
    /// Truncated dimension of free(d) modulo the commutator-filtration ideal I_n.
    Cfilt {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
    },
    /// Search for a formal-smoothness witness.
    Smooth {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Karoubi-de Rham cohomology of a finite-dimensional algebra.
    Drh {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        deg: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Separability idempotent and projectivity of the bimodule of 1-forms.
    Sep {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// dim Hom(M, N) between finite-dimensional modules.
    Hom { m: PathBuf, n: PathBuf },
    /// dim Ext^1(M, N).
    Ext1 { m: PathBuf, n: PathBuf },
    /// Tangent dimension of the double at a pair of framed modules.
    T2dim { m: PathBuf, n: PathBuf },
    /// Equations of the representation scheme Rep_n.
    Repr {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Also evaluate the Jacobian corank at sampled rank-m idempotent points
        /// (seeded by NCG_SEED).
        #[arg(long)]
        sample_rank: Option<usize>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Trace of the noncommutative divergence against the coordinate divergence.
    Div {
        file: PathBuf,
        /// Derivation as `gen=expr,gen=expr`; unlisted generators map to 0.
        #[arg(long)]
        xi: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Compare Rep_n of the tangent algebra with the tangent bundle of Rep_n.
    TangentIso {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Cech cohomology of a comodule over a cover bundle.
    Cech {
        bundle: PathBuf,
        #[arg(long)]
        sheaf: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long = "cutoff", value_delimiter = ',', default_value = "2,3,4")]
        cutoffs: Vec<usize>,
        /// Degree window `lo,hi` for graded covers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
        #[arg(long, default_value_t = 2)]
        slack: usize,
    },
    /// Noncommutative projective space and the Kronecker quiver comparison.
    Nproj {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        sheaf: Option<SheafArg>,
        #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
        cutoffs: Vec<usize>,
    },
    /// Run a golden-file corpus manifest.
    Corpus {
        manifest: PathBuf,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.status as i32
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::InputError } else { ExitStatus::Ok };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            Outcome { status, stdout, stderr }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    match commands::dispatch(&cli.command) {
        Ok(mut done) => {
            if cli.timing {
                done.report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let stdout = match cli.emit {
                Emit::Json => done.report.to_json(),
                Emit::Text => done.text,
            };
            Outcome {
                status: done.status,
                stdout,
                stderr: done.notes.iter().map(|n| format!("note: {n}\n")).collect(),
            }
        }
        Err(e) => {
            let status = match e.downcast_ref::<ncg_core::Error>() {
                Some(ncg_core::Error::InsufficientBound { .. }) => ExitStatus::Undetermined,
                _ => ExitStatus::InputError,
            };
            Outcome {
                status,
                stdout: String::new(),
                stderr: format!("error: {e:#}\n"),
            }
        }
    }
}
