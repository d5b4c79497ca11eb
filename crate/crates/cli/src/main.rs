//! `jja`: command-line front end for exact Jacobi-Jordan algebra computations.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "jja", version, about = "Exact computations with Jacobi-Jordan algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Report style.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Worker threads for parallel searches (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for every randomized step. `JJ_SEED` takes precedence when set.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fill in the missing order of one-sided `mul` lines when reading `.jja` files.
    #[arg(long, global = true)]
    pub symmetrize: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check commutativity and the Jacobi identity exhaustively.
    Check { file: PathBuf },
    /// Structural invariants: series, center, Leibniz and Jordan identities.
    Analyze { file: PathBuf },
    /// Decide whether a nondegenerate invariant form exists.
    Frobenius {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        trials: u64,
        #[arg(long, default_value_t = 100_000)]
        exhaustive_cap: u64,
    },
    /// Build `R(x⊗y) = α y⊗x + c⊗xy` and test the braid relation.
    Qybe(QybeArgs),
    /// Validate crossed data, build crossed products, sample systems.
    Crossed(CrossedArgs),
    /// Second cohomology spaces.
    Cohomology(CohomologyArgs),
    /// Co-flag data: λ list, cohomology, representatives and census.
    Coflag(CoflagArgs),
    /// Decide isomorphism (exit 0 yes, 1 no, 2 unknown).
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = jjalg::iso::DEFAULT_NODE_CAP)]
        cap: u64,
    },
    /// Enumerate the automorphism group over F_p.
    Aut {
        file: PathBuf,
        #[arg(long, default_value_t = jjalg::iso::DEFAULT_NODE_CAP)]
        cap: u64,
        /// Print every automorphism matrix.
        #[arg(long)]
        list: bool,
    },
    /// Emit a member of a named family as a `.jja` file.
    Family(FamilyArgs),
    /// Exhaustive class counts over F_p.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
pub struct QybeArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    /// Central element such as `2*z + y`; defaults to the first center basis vector.
    #[arg(long)]
    pub central: Option<String>,
    /// Write R as a plain-text matrix.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Compare QYBE with the Leibniz law over many (α, c) pairs.
    #[arg(long)]
    pub sweep: bool,
    /// Number of sampled pairs for the sweep over Q.
    #[arg(long, default_value_t = 20)]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct CrossedArgs {
    /// A `.jjx` crossed-data file.
    #[arg(required_unless_present = "sample_over")]
    pub file: Option<PathBuf>,
    /// Write the crossed product as `.jja`.
    #[arg(long)]
    pub product: Option<PathBuf>,
    /// Recognize the product through a random section and compare with the input.
    #[arg(long)]
    pub roundtrip: bool,
    /// Sample a random valid crossed system over this base algebra (F_p).
    #[arg(long, conflicts_with = "file")]
    pub sample_over: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub fiber: usize,
    /// Output path for the sampled `.jjx`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 1 << 16)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionKind {
    Trivial,
    Regular,
    Dual,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    pub file: PathBuf,
    /// Co-flag cohomology for every admissible λ.
    #[arg(long, conflicts_with_all = ["global"])]
    pub coflag: bool,
    /// Module for the abelian computation.
    #[arg(long, value_enum, default_value = "trivial")]
    pub action: ActionKind,
    /// Fiber dimension for the trivial action.
    #[arg(long, default_value_t = 1)]
    pub fiber: usize,
    /// Classes of all crossed systems with fiber of this dimension (F_p).
    #[arg(long)]
    pub global: Option<usize>,
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct CoflagArgs {
    pub file: PathBuf,
    /// Count data up to cohomology and up to isomorphism (F_p only).
    #[arg(long)]
    pub census: bool,
    /// Directory for representative `.jja` files.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Abelian,
    Heisenberg,
    #[value(name = "v_f_v0")]
    VFV0,
    #[value(name = "a_xyz")]
    AXyz,
    A12,
    #[value(name = "heis_abc")]
    HeisAbc,
    #[value(name = "a_theta")]
    ATheta,
    #[value(name = "j_t")]
    Jt,
    #[value(name = "kn_x_v0")]
    KnXV0,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub name: FamilyName,
    /// `Q`, `Fp 5`, `F5` or `Fp5`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Matrices are written `1,0;0,1`; vectors `1,0`.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub v0: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    /// Output file; the `.jja` text goes to stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusKind {
    /// Symmetric bilinear forms up to scaling and change of basis.
    Homothety,
    /// Square-zero pairs (f, v₀) on F_p^m, formula against orbit count.
    Codim1,
    /// JJ algebras of a given dimension up to isomorphism.
    Jj,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    pub kind: CensusKind,
    #[arg(long, default_value = "F3")]
    pub field: String,
    /// Dimension of the forms, fiber or algebras.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = jjalg::iso::DEFAULT_NODE_CAP)]
    pub cap: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::ERROR_EXIT)
        }
    }
}
