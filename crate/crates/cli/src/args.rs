use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Debug, Parser)]
#[command(name = "curveaut", version, about = "Galois points, automorphism groups and p-ranks of plane curves over GF(2^n)")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for scans and closures (default 1).
    #[arg(long, global = true, env = "CURVEAUT_THREADS")]
    pub threads: Option<usize>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Run every claim about one of the two families and report each.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// List the Galois points with coordinates in GF(2^degree).
    GaloisScan(ScanArgs),
    /// Compute the automorphism group.
    Aut(AutArgs),
    /// Ramification of the projection from a point.
    RamProfile(RamArgs),
    /// p-rank by Deuring-Shafarevich and/or the Hasse-Witt matrix.
    Prank(PrankArgs),
    /// Compare a group order with the Hurwitz bound 84(g - 1).
    Hurwitz(HurwitzArgs),
    /// Summary table for the star family over several q.
    Table(TableArgs),
    /// Write a curve file.
    Curve(CurveOut),
}

#[derive(Clone, Debug, Subcommand)]
pub enum Verify {
    Theorem1(Theorem1Cmd),
    Theorem2(Theorem2Cmd),
}

#[derive(Clone, Debug, Args)]
pub struct Theorem1Cmd {
    #[arg(long, default_value_t = 4)]
    pub q: u64,
    /// lambda as a sum of powers of w ("w", "w+1", "w^3") or hex bits ("0x6").
    #[arg(long, default_value = "w")]
    pub lambda: String,
    /// Degree over GF(2) of the field lambda is read in (default log2 q).
    #[arg(long)]
    pub ambient: Option<u32>,
    /// Skip the scans, the lift round trip and brute force; check closure elements on sample points.
    #[arg(long)]
    pub closure_only: bool,
    /// Allow brute force over PGL(3) up to 10^8 elements.
    #[arg(long)]
    pub brute_force: bool,
    /// Degree of the on-curve Galois point scan (default 2 log2 q).
    #[arg(long)]
    pub scan_degree: Option<u32>,
}

#[derive(Clone, Debug, Args)]
pub struct Theorem2Cmd {
    #[arg(long, default_value = "w")]
    pub lambda: String,
    /// Degree over GF(2) of the field lambda is read in (default 2).
    #[arg(long)]
    pub ambient: Option<u32>,
    /// Degree of the off-curve Galois point scan (default 4).
    #[arg(long)]
    pub scan_degree: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Star,
    Doublestar,
}

/// Which curve to work on.
#[derive(Clone, Debug, Args)]
pub struct CurveSel {
    #[arg(long, value_enum, default_value_t = FamilyArg::Star)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 4)]
    pub q: u64,
    #[arg(long, default_value = "w")]
    pub lambda: String,
    #[arg(long)]
    pub ambient: Option<u32>,
    /// Read the curve from a file instead.
    #[arg(long, conflicts_with_all = ["family", "q", "lambda", "ambient"])]
    pub curve: Option<PathBuf>,
    /// Search degree; the working field is enlarged to contain GF(2^degree).
    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    On,
    Off,
    Both,
}

#[derive(Clone, Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub curve: CurveSel,
    #[arg(long, value_enum, default_value_t = RegionArg::Both)]
    pub region: RegionArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AutMethod {
    /// Closure of the groups at two Galois points.
    Closure,
    /// Every projectivity over GF(2^degree).
    Brute,
    /// The 24 maps permuting the quartic's frame.
    Frame,
}

#[derive(Clone, Debug, Args)]
pub struct AutArgs {
    #[command(flatten)]
    pub curve: CurveSel,
    #[arg(long, value_enum, default_value_t = AutMethod::Closure)]
    pub method: AutMethod,
    /// Include every group element in the output.
    #[arg(long)]
    pub elements: bool,
}

#[derive(Clone, Debug, Args)]
pub struct RamArgs {
    #[command(flatten)]
    pub curve: CurveSel,
    /// Center as three hex coordinates, e.g. "0x1,0x0,0x0" (default (1:0:0)).
    #[arg(long)]
    pub center: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrankArg {
    Ds,
    Hw,
    Both,
}

#[derive(Clone, Debug, Args)]
pub struct PrankArgs {
    #[command(flatten)]
    pub curve: CurveSel,
    #[arg(long, value_enum, default_value_t = PrankArg::Both)]
    pub method: PrankArg,
}

#[derive(Clone, Debug, Args)]
pub struct HurwitzArgs {
    /// Use |G| = q^3 - q and g = q(q-1)/2.
    #[arg(long, conflicts_with_all = ["order", "genus"])]
    pub q: Option<u64>,
    #[arg(long, requires = "genus")]
    pub order: Option<u64>,
    #[arg(long, requires = "order")]
    pub genus: Option<u64>,
}

#[derive(Clone, Debug, Args)]
pub struct TableArgs {
    /// Comma-separated list of q (default 4,8,16); may be empty.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub qs: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Args)]
pub struct CurveOut {
    #[command(flatten)]
    pub curve: CurveSel,
    /// Output path (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
