use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "superfourier", version, about = "Supercharacter tables and super-Fourier transforms on (Z/nZ)^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Superclasses (and character orbits) of a theory.
    Partition(CommonArgs),
    /// The supercharacter table.
    Table(CommonArgs),
    /// Super-Fourier transform of a superclass function read from a file.
    Transform(TransformArgs),
    /// Structure constants, the matrices T_i and their diagonalization by U.
    Algebra(CommonArgs),
    /// Classical exponential sums next to their closed forms.
    Sums(SumsArgs),
    /// Symmetric-group uncertainty constants as a CSV grid.
    UncertaintyGrid(GridArgs),
    /// SVG image of one supercharacter.
    Plot(PlotArgs),
    /// Run the verification battery.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    /// One line per theory (verify only).
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// All invertible matrices.
    Gl,
    /// Determinant one.
    Sl,
    /// Permutation matrices.
    Permutations,
    /// The trivial group.
    Trivial,
    /// The group of a named theory, e.g. `catalog:kloosterman`.
    Catalog(String),
}

fn group_kind(s: &str) -> Result<GroupKind, String> {
    match s {
        "gl" => Ok(GroupKind::Gl),
        "sl" | "sl-like" => Ok(GroupKind::Sl),
        "perm" | "permutations" => Ok(GroupKind::Permutations),
        "trivial" => Ok(GroupKind::Trivial),
        _ => match s.strip_prefix("catalog:") {
            Some(name) if !name.is_empty() => Ok(GroupKind::Catalog(name.to_string())),
            _ => Err(format!("{s} is not one of gl, sl-like, perm, trivial, catalog:<name>")),
        },
    }
}

#[derive(Args, Debug, Clone)]
pub struct TheoryArgs {
    /// max-collapse, dft, dct, gauss, kloosterman, heilbronn, ramanujan,
    /// symmetric, jsym-triangular or custom.
    #[arg(long)]
    pub theory: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Generator matrices such as "1,1;0,1|2,0;0,3"; the flag may repeat.
    #[arg(long = "generators", value_name = "M1|M2|...")]
    pub generators: Vec<String>,
    /// gl, sl-like, perm, trivial or catalog:<name>.
    #[arg(long, value_parser = group_kind)]
    pub group: Option<GroupKind>,
    /// Symmetric matrix J for a J-symmetric custom group.
    #[arg(long)]
    pub j: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// json by default; verify defaults to text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides 1e-9 * max(1, N).
    #[arg(long, value_parser = positive_float)]
    pub tolerance: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[command(flatten)]
    pub theory: TheoryArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// JSON array of numbers or [re, im] pairs, or CSV lines "re,im".
    #[arg(long)]
    pub input: PathBuf,
    /// Treat the input as f̂ and invert.
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub check_uncertainty: bool,
    /// Values of modulus at most this are outside the support.
    #[arg(long, default_value_t = superfourier::fourier::DEFAULT_SUPPORT_THRESHOLD, value_parser = positive_float)]
    pub threshold: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    Ramanujan,
    Kloosterman,
    Heilbronn,
    Gauss,
}

#[derive(Args, Debug, Clone)]
pub struct SumsArgs {
    #[arg(value_enum)]
    pub kind: SumKind,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[arg(long, default_value_t = 12)]
    pub max_n: u64,
    #[arg(long, default_value_t = 12)]
    pub max_d: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PlotArgs {
    #[command(flatten)]
    pub theory: TheoryArgs,
    /// Vector whose orbit is the character class, e.g. "0,0,0,1,1".
    #[arg(long)]
    pub x: Option<String>,
    /// Index of the character class instead of a vector.
    #[arg(long)]
    pub class: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// "default", or omit and pass a single theory.
    #[arg(long)]
    pub battery: Option<String>,
    #[command(flatten)]
    pub theory: TheoryArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random functions per theory.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} must be a positive number"))
    }
}
