use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "catcoh", version, about = "Cohomology, Ext and Tor over finite categories, and their spectral sequences")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: F<p> for a prime p, or Q.
    #[arg(long, global = true, default_value = "F2")]
    pub field: String,
    /// Highest total degree computed.
    #[arg(long, global = true, default_value_t = 4)]
    pub nmax: usize,
    /// Last spectral sequence page computed.
    #[arg(long, global = true, default_value_t = 4)]
    pub rmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Directory for cached results, keyed by input content.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check category, module, functor, transformation or group files.
    Validate(ValidateArgs),
    /// H^n(C; M); M defaults to constant coefficients.
    Cohomology(CategoryModule),
    /// H_n(C; N) for a right module N; N defaults to constant coefficients.
    Homology(CategoryModule),
    /// Ext^n(N, M) for two modules of the same variance.
    Ext(ExtArgs),
    /// Tor_n(N, M) for a right module N and a left module M.
    Tor(TorArgs),
    /// The map F^*: H^n(D; M) → H^n(C; Res M) of a functor F: C → D.
    InducedMap(InducedArgs),
    /// E_2 page, abutment and consistency checks of a decomposition.
    E2(E2Args),
    /// All pages of the spectral sequence of a target regular extension.
    Pages(PagesArgs),
    /// Emit a category file.
    Build(BuildArgs),
    /// Verify one structural law on the given inputs.
    Check(CheckArgs),
}

#[derive(Args, Debug, Default)]
pub struct ValidateArgs {
    #[arg(long)]
    pub category: Option<PathBuf>,
    /// Module files over the category.
    #[arg(long)]
    pub module: Vec<PathBuf>,
    #[arg(long)]
    pub functor: Option<PathBuf>,
    #[arg(long)]
    pub transformation: Option<PathBuf>,
    #[command(flatten)]
    pub group: GroupArgs,
}

#[derive(Args, Debug)]
pub struct CategoryModule {
    #[arg(long)]
    pub category: PathBuf,
    #[arg(long)]
    pub module: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExtArgs {
    #[arg(long)]
    pub category: PathBuf,
    /// First argument N of Ext(N, M).
    #[arg(long)]
    pub from: PathBuf,
    /// Second argument M of Ext(N, M).
    #[arg(long)]
    pub to: PathBuf,
}

#[derive(Args, Debug)]
pub struct TorArgs {
    #[arg(long)]
    pub category: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long)]
    pub left: PathBuf,
}

#[derive(Args, Debug)]
pub struct InducedArgs {
    #[arg(long)]
    pub functor: PathBuf,
    /// Module over the functor's target.
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Homology instead of cohomology.
    #[arg(long)]
    pub homology: bool,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GroupArgs {
    /// Group file: element names with a table, or permutation generators.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Built-in group: Z<n>, S<n>, D<2n> or V4.
    #[arg(long, conflicts_with = "group")]
    pub group_name: Option<String>,
    /// all, all-p-subgroups, nontrivial-p-subgroups, p-centric, or subgroups
    /// separated by ';' with generators separated by spaces.
    #[arg(long, default_value = "all")]
    pub collection: String,
    #[arg(long)]
    pub prime: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// A regular extension given as a functor file.
    Extension,
    /// The subdivision of an EI category.
    Subdivision,
    Subgroup,
    Centralizer,
    Normalizer,
    LinkingSubgroup,
    LinkingNormalizer,
    OrbitFusion,
}

#[derive(Args, Debug)]
pub struct E2Args {
    #[arg(long, value_enum)]
    pub shape: Shape,
    #[arg(long)]
    pub functor: Option<PathBuf>,
    #[arg(long)]
    pub category: Option<PathBuf>,
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Second module N for the Ext shapes of an extension.
    #[arg(long)]
    pub coefficient: Option<PathBuf>,
    /// Left coefficients (centralizer shape).
    #[arg(long)]
    pub left: bool,
    #[command(flatten)]
    pub group: GroupArgs,
    /// Largest p in the E_2 table; defaults to nmax + 1.
    #[arg(long)]
    pub pmax: Option<usize>,
    /// Largest q in the E_2 table; defaults to nmax + 1.
    #[arg(long)]
    pub qmax: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PagesArgs {
    #[arg(long)]
    pub functor: PathBuf,
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Re-check the page recurrence from the emitted tables.
    #[arg(long)]
    pub revalidate: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    Transporter,
    Orbit,
    Fusion,
    FusionOrbit,
    Linking,
    Subdivision,
    Skeleton,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub kind: BuildKind,
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub category: Option<PathBuf>,
    /// Write the category file here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Representables,
    Adjunction,
    Balancing,
    InducedExt,
    Cofinality,
    FirstHomotopy,
    Regularity,
    LinkingAxioms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrientationArg {
    Any,
    Target,
    Source,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub law: Law,
    #[arg(long)]
    pub category: Option<PathBuf>,
    #[arg(long)]
    pub functor: Option<PathBuf>,
    #[arg(long)]
    pub transformation: Option<PathBuf>,
    #[arg(long)]
    pub module: Option<PathBuf>,
    #[arg(long)]
    pub coefficient: Option<PathBuf>,
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value_t = OrientationArg::Any)]
    pub orientation: OrientationArg,
}
