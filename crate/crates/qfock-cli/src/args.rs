//! Flag vocabulary. Every command shares `--type/--rank` for the datum,
//! `--json/--human` for the output style, and `--out` for redirection;
//! `--l 0` and an absent `--l` both mean generic `q`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfock::rootdata::Family;

#[derive(Parser)]
#[command(
    name = "qfock",
    version,
    about = "Exact lattice construction and verification for simply laced quantum affine algebras",
    after_help = "Set QFOCK_THREADS to bound suite parallelism. Exit codes: \
                  0 all checks pass, 1 a check failed, 2 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Summarize a root datum: Cartan data, graded determinant, optional
    /// root-of-unity scan of the determinant.
    Rootdata(RootdataArgs),
    /// Apply operators to a basis state and print the resulting terms.
    Act(ActArgs),
    /// Weight multiplicity table of the module up to an energy depth.
    Character(CharacterArgs),
    /// Run an exact verification suite at generic q.
    Verify(VerifyArgs),
    /// Root-of-unity checks: dual elements, joint kernels, singular vectors.
    Rootofunity(RootofunityArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
pub enum FamilyArg {
    A,
    D,
    E,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::D => Family::D,
            FamilyArg::E => Family::E,
        }
    }
}

#[derive(Args)]
pub struct DatumArgs {
    /// Simply laced family.
    #[arg(long = "type", value_enum, ignore_case = true)]
    pub family: FamilyArg,
    /// Rank (A: >= 1, D: >= 4, E: 6..8).
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Machine mode: one JSON value per line (the default).
    #[arg(long, conflicts_with = "human")]
    pub json: bool,
    /// Human mode: aligned text instead of JSON lines.
    #[arg(long)]
    pub human: bool,
}

#[derive(Args)]
pub struct RootdataArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Root-of-unity order for the determinant scan; 0 or absent = generic q.
    #[arg(long)]
    pub l: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ActArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Operator spec, e.g. `x+ i=1 n=-1 r=2`, `h i=1 k=-1`, `K i=1`, `D`.
    /// Node indices are 1-based. Repeat the flag to compose; operators
    /// apply in the order given, each to the previous result.
    #[arg(long = "op", required = true)]
    pub ops: Vec<String>,
    /// Basis state, e.g. `{1:[2,1]} @ eta=[1,0]`; defaults to the vacuum.
    #[arg(long)]
    pub state: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct CharacterArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Largest energy listed.
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "lower")]
pub enum VerifySuite {
    /// Antisymmetrized product identity over the auxiliary variables.
    Id,
    /// Squared-difference expansion and factorial divisibility.
    Rfact,
    /// Loop-generator relations on a basis window.
    Drinfeld,
    /// Iterated action against the closed product form.
    Product,
    /// Everything above.
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum)]
    pub suite: VerifySuite,
    /// Datum family for the operator suites (ignored by `id` and `rfact`).
    #[arg(long = "type", value_enum, ignore_case = true, default_value = "A")]
    pub family: FamilyArg,
    /// Datum rank for the operator suites.
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Largest symbol count for `id` and `rfact`.
    #[arg(long = "r", default_value_t = 3)]
    pub r: u32,
    /// Energy window for the operator suites.
    #[arg(long, default_value_t = 2)]
    pub depth: u32,
    /// Mode window (`drinfeld`) and largest power (`product`).
    #[arg(long, default_value_t = 2)]
    pub rmax: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "lower")]
pub enum RootSuite {
    /// Kernel scan, singular-vector search, and dimension comparison.
    Irreducible,
    /// Dual annihilators inverting the level pairings.
    Duals,
}

#[derive(Args)]
pub struct RootofunityArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Order of the root of unity (required, >= 1).
    #[arg(long)]
    pub l: u32,
    /// Largest energy (and dual level) examined.
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    /// Which checks to run.
    #[arg(value_enum)]
    pub suite: RootSuite,
    #[command(flatten)]
    pub output: OutputArgs,
}
